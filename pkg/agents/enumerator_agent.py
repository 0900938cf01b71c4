"""
Enumerator Agent: admissible (H, S_ab, S_23) witnesses.
"""
from agents.base_agent import BaseAgent
from services.enumeration import enumerate_types, group_pairs
from utils.errors import ToolkitError
from utils.models import AgentResponse, PipelineMessage


class EnumeratorAgent(BaseAgent):
    """First pipeline stage: runs the admissibility enumeration."""

    def __init__(self, agent_name: str = "Enumerator"):
        super().__init__(agent_name)

    def talk(self, message: PipelineMessage) -> AgentResponse:
        try:
            message.candidates = enumerate_types(message.h_max)
        except ToolkitError as e:
            self.logger.error(f"Enumeration failed: {e}")
            return self._prepare_response(message, success=False, error=str(e))
        pairs = group_pairs(message.candidates)
        self.logger.info(f"{len(message.candidates)} witnesses in {len(pairs)} pairs")
        return self._prepare_response(message, witnesses=len(message.candidates), pairs=len(pairs))
