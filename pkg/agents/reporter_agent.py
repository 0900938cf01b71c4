"""
Reporter Agent: assembles and renders the classification report.
"""
from agents.base_agent import BaseAgent
from services.report import assemble_report, render_report
from utils.errors import ToolkitError
from utils.models import AgentResponse, PipelineMessage


class ReporterAgent(BaseAgent):
    """Last pipeline stage."""

    def __init__(self, agent_name: str = "Reporter"):
        super().__init__(agent_name)

    def talk(self, message: PipelineMessage) -> AgentResponse:
        try:
            message.report = assemble_report(message.h_max, message.candidates, message.extended, message.reports)
            message.report_text = render_report(message.report, machine=message.machine)
        except ToolkitError as e:
            return self._prepare_response(message, success=False, error=str(e))
        return self._prepare_response(message, discrepancies=message.report.discrepancies)
