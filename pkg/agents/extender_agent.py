"""
Extender Agent: continuations down the lower central series.
"""
from agents.base_agent import BaseAgent
from services.enumeration import extend_types_gamma3
from utils.errors import ToolkitError
from utils.models import AgentResponse, PipelineMessage


class ExtenderAgent(BaseAgent):
    """Adds third- and fourth-layer witnesses to the message."""

    def __init__(self, agent_name: str = "Extender"):
        super().__init__(agent_name)

    def talk(self, message: PipelineMessage) -> AgentResponse:
        if not message.candidates:
            self.logger.warning("No candidates to extend")
        try:
            message.extended = extend_types_gamma3(message.candidates, message.h_max)
        except ToolkitError as e:
            return self._prepare_response(message, success=False, error=str(e))
        fourth = sum(c.s_45 is not None for c in message.extended)
        return self._prepare_response(message, third_layer=len(message.extended) - fourth, fourth_layer=fourth)
