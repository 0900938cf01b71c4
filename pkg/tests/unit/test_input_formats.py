"""
Unit tests for the crystal and endomorphism readers.
"""
import pytest

from config.settings import PROJECT_ROOT
from services.lattice_cohomology import is_bieberbach
from storage.input_formats import load_crystal, named_group, parse_crystal, parse_endo_specs
from utils.errors import FormatError

CRYSTALS = PROJECT_ROOT / "data" / "crystals"

KLEIN = """
name klein
group C2
rank 2
generator 1
  1  0
  0 -1
cocycle cyclic 1 0
"""


class TestNamedGroups:
    """Group identifiers accepted in crystal files."""

    def test_small_groups(self):
        assert named_group("C3")[0].order == 3
        assert named_group("S4")[0].order == 24
        assert len(named_group("S4")[1]) == 2

    def test_catalog_group(self):
        group, gens = named_group("A5")
        assert group.order == 60
        assert len(gens) == 2

    def test_unknown(self):
        with pytest.raises(FormatError):
            named_group("Q8")


class TestCrystals:
    """Crystal data files."""

    def test_klein_text(self):
        crystal = parse_crystal(KLEIN)
        assert crystal.name == "klein"
        assert crystal.action.rank == 2
        assert is_bieberbach(crystal).torsion_free

    def test_shipped_files(self):
        assert is_bieberbach(load_crystal(CRYSTALS / "klein_bottle.crystal")).torsion_free
        assert not is_bieberbach(load_crystal(CRYSTALS / "a5_split.crystal")).torsion_free

    def test_explicit_entries(self):
        text = "group C2\nrank 2\ngenerator 1\n  1 0\n  0 -1\ncocycle entry 1 1 : 1 0\n"
        crystal = parse_crystal(text)
        assert crystal.cocycle.value(1, 1) == (1, 0)
        assert is_bieberbach(crystal).torsion_free

    def test_missing_group(self):
        with pytest.raises(FormatError):
            parse_crystal("rank 1\n")

    def test_unknown_keyword(self):
        with pytest.raises(FormatError):
            parse_crystal("group C2\nholonomy C2\n")

    def test_short_generator_block(self):
        with pytest.raises(FormatError):
            parse_crystal("group C2\nrank 2\ngenerator 1\n  1 0\n")

    def test_invalid_cocycle(self):
        text = "group C2\nrank 1\ngenerator 1\n  -1\ncocycle entry 1 1 : 1\n"
        with pytest.raises(FormatError):
            parse_crystal(text)

    def test_permutation_action_needs_permutations(self):
        with pytest.raises(FormatError):
            parse_crystal("group SL25\naction permutation\n")

    def test_missing_file(self):
        with pytest.raises(FormatError):
            load_crystal(CRYSTALS / "missing.crystal")

    def test_undecodable_file(self, tmp_path):
        path = tmp_path / "bad.crystal"
        path.write_bytes(b"group C2\n\xff\n")
        with pytest.raises(FormatError):
            load_crystal(path)


class TestEndoSpecs:
    """Endomorphism spec files."""

    def test_words(self):
        specs = parse_endo_specs("generators: x y\nendo f\nx -> xY\ny -> 1\n")
        assert len(specs) == 1
        assert specs[0].images == (((0, 1), (1, -1)), ())
        assert specs[0].word_text(specs[0].images[0]) == "x Y"

    def test_shipped_a5_file(self):
        specs = parse_endo_specs((PROJECT_ROOT / "data" / "a5-f4.spec").read_text())
        assert [s.name for s in specs] == ["sigma", "tau"]
        assert specs[0].images[1] == ((0, 1), (1, 1), (2, 1))

    def test_missing_image(self):
        with pytest.raises(FormatError):
            parse_endo_specs("generators: x y\nendo f\nx -> y\n")

    def test_unknown_letter(self):
        with pytest.raises(FormatError):
            parse_endo_specs("generators: x y\nendo f\nx -> z\ny -> x\n")

    def test_image_outside_block(self):
        with pytest.raises(FormatError):
            parse_endo_specs("generators: x y\nx -> y\n")

    def test_no_generators(self):
        with pytest.raises(FormatError):
            parse_endo_specs("endo f\n")
