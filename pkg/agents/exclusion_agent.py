"""
Exclusion Agent: applies the fact-driven exclusion rules.
"""
from agents.base_agent import BaseAgent
from config.settings import config
from services.exclusion import apply_exclusions, surviving_pairs
from storage.fact_table import load_facts
from utils.errors import ToolkitError
from utils.models import AgentResponse, PipelineMessage


class ExclusionAgent(BaseAgent):
    """Loads the fact table when needed and judges every witness."""

    def __init__(self, agent_name: str = "Exclusion"):
        super().__init__(agent_name)

    def talk(self, message: PipelineMessage) -> AgentResponse:
        try:
            if message.facts is None:
                path = message.facts_path or config.enumeration_config.facts_path
                message.facts = list(load_facts(path))
                message.facts_path = str(path)
            message.reports = apply_exclusions(message.candidates, message.facts)
        except ToolkitError as e:
            self.logger.error(f"Exclusion failed: {e}")
            return self._prepare_response(message, success=False, error=str(e))
        survivors = surviving_pairs(message.reports)
        self.logger.info(f"{len(survivors)} pairs survive with {len(message.facts)} facts")
        return self._prepare_response(message, facts=len(message.facts), survivors=len(survivors))
