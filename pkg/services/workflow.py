"""
LangGraph workflow for the classification pipeline.

Nodes run the stage agents in order: enumerate -> extend -> exclude -> report.
After each node a conditional router either moves on or ends the run when a
stage has failed.
"""
import logging
import time
from typing import Any, Callable, Dict, List, Optional, TypedDict

from langgraph.graph import END, StateGraph

from agents.base_agent import BaseAgent
from agents.enumerator_agent import EnumeratorAgent
from agents.exclusion_agent import ExclusionAgent
from agents.extender_agent import ExtenderAgent
from agents.reporter_agent import ReporterAgent
from config.settings import config
from utils.models import CandidateType, ExclusionReport, Fact, PipelineMessage

logger = logging.getLogger(__name__)

STAGES = ("enumerate", "extend", "exclude", "report")


class ClassificationState(TypedDict):
    """Workflow state shared by the nodes."""
    # input
    h_max: int
    facts_path: Optional[str]
    facts: Optional[List[Fact]]
    machine: bool

    # progress
    current_stage: str
    error_message: str
    finished: bool
    success: bool

    # stage outputs
    candidates: List[CandidateType]
    extended: List[CandidateType]
    reports: List[ExclusionReport]
    report: Any
    report_text: str

    # monitoring
    start_time: float
    end_time: Optional[float]
    stage_times: Dict[str, float]


def _message(state: ClassificationState) -> PipelineMessage:
    return PipelineMessage(
        h_max=state["h_max"],
        facts_path=state["facts_path"],
        facts=state["facts"],
        machine=state["machine"],
        candidates=state["candidates"],
        extended=state["extended"],
        reports=state["reports"],
    )


def _run_stage(state: ClassificationState, stage: str, agent: BaseAgent, next_stage: str) -> ClassificationState:
    logger.info(f"Running stage '{stage}'")
    response = agent.process_message(_message(state))
    elapsed = response.execution_time
    state["stage_times"] = {**state.get("stage_times", {}), stage: elapsed}
    if not response.success:
        state.update({
            "error_message": f"{agent.agent_name} failed: {response.error}",
            "current_stage": "Error",
            "finished": True,
            "success": False,
        })
        logger.error(state["error_message"])
        return state
    result = response.message
    state.update({
        "facts": result.facts,
        "facts_path": result.facts_path,
        "candidates": result.candidates,
        "extended": result.extended,
        "reports": result.reports,
        "report": result.report,
        "report_text": result.report_text,
        "current_stage": next_stage,
    })
    if next_stage == "Completed":
        state.update({"finished": True, "success": True, "end_time": time.time()})
    logger.info(f"Stage '{stage}' finished in {elapsed:.2f}s")
    return state


def enumerate_node(state: ClassificationState) -> ClassificationState:
    return _run_stage(state, "enumerate", EnumeratorAgent(), "extend")


def extend_node(state: ClassificationState) -> ClassificationState:
    return _run_stage(state, "extend", ExtenderAgent(), "exclude")


def exclude_node(state: ClassificationState) -> ClassificationState:
    return _run_stage(state, "exclude", ExclusionAgent(), "report")


def report_node(state: ClassificationState) -> ClassificationState:
    return _run_stage(state, "report", ReporterAgent(), "Completed")


def should_continue(state: ClassificationState) -> str:
    """Next node name, or "end" once the run is finished or has failed."""
    if state["finished"] or state["current_stage"] in ("Completed", "Error"):
        return "end"
    if state["current_stage"] in STAGES:
        return state["current_stage"]
    logger.warning(f"Unknown stage: {state['current_stage']}")
    return "end"


def initialize_state(h_max: int, facts: Optional[List[Fact]] = None, facts_path: Optional[str] = None,
                     machine: bool = False) -> ClassificationState:
    return ClassificationState(
        h_max=h_max,
        facts_path=facts_path,
        facts=facts,
        machine=machine,
        current_stage="enumerate",
        error_message="",
        finished=False,
        success=False,
        candidates=[],
        extended=[],
        reports=[],
        report=None,
        report_text="",
        start_time=time.time(),
        end_time=None,
        stage_times={},
    )


def create_classification_workflow():
    """Compiled StateGraph for the four pipeline stages."""
    workflow = StateGraph(ClassificationState)
    nodes: Dict[str, Callable[[ClassificationState], ClassificationState]] = {
        "enumerate": enumerate_node,
        "extend": extend_node,
        "exclude": exclude_node,
        "report": report_node,
    }
    for name, node in nodes.items():
        workflow.add_node(name, node)
    workflow.set_entry_point("enumerate")
    for stage, following in zip(STAGES, STAGES[1:] + ("end",)):
        routes = {"end": END}
        if following != "end":
            routes[following] = following
        workflow.add_conditional_edges(stage, should_continue, routes)
    return workflow.compile()


class ClassificationPipeline:
    """Runs the workflow and keeps run statistics."""

    def __init__(self):
        self.workflow = create_classification_workflow()
        self.stats = {
            "total_runs": 0,
            "successful_runs": 0,
            "failed_runs": 0,
            "average_processing_time": 0.0,
        }

    def run(self, h_max: Optional[int] = None, facts: Optional[List[Fact]] = None,
            facts_path: Optional[str] = None, machine: bool = False) -> ClassificationState:
        """Run all stages.

        Args:
            h_max: Hirsch length bound; the configured default when None
            facts: Preloaded facts; facts_path or the configured table is
                read when None
            facts_path: Fact table to read
            machine: Render the report as line records

        Returns:
            Final workflow state; check "success" and "error_message"
        """
        h_max = config.enumeration_config.h_max if h_max is None else h_max
        self.stats["total_runs"] += 1
        start = time.time()
        final_state = self.workflow.invoke(initialize_state(h_max, facts, facts_path, machine))
        elapsed = time.time() - start
        key = "successful_runs" if final_state["success"] else "failed_runs"
        self.stats[key] += 1
        runs = self.stats["total_runs"]
        self.stats["average_processing_time"] = (
            (self.stats["average_processing_time"] * (runs - 1) + elapsed) / runs
        )
        logger.info(f"Pipeline run finished: success={final_state['success']}, {elapsed:.2f}s")
        return final_state

    def get_stats(self) -> Dict[str, Any]:
        return self.stats.copy()

    def reset_stats(self):
        for key in self.stats:
            self.stats[key] = 0.0 if key == "average_processing_time" else 0
