"""
Base agent interface for the classification pipeline stages.
"""
import time
import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Optional

from utils.models import AgentResponse, PipelineMessage


class AgentState(Enum):
    """Agent execution states."""
    IDLE = "idle"
    PROCESSING = "processing"
    ERROR = "error"
    COMPLETED = "completed"


class BaseAgent(ABC):
    """Abstract base class for pipeline stage agents."""

    def __init__(self, agent_name: str):
        self.agent_name = agent_name
        self.state = AgentState.IDLE
        self.execution_count = 0
        self.success_count = 0
        self.error_count = 0
        self.total_execution_time = 0.0
        self.last_execution_time = 0.0
        self.last_error: Optional[str] = None
        self.logger = logging.getLogger(f"Agent.{agent_name}")

    @abstractmethod
    def talk(self, message: PipelineMessage) -> AgentResponse:
        """Run this stage on the message.

        Args:
            message: Pipeline message carrying the previous stages' results

        Returns:
            AgentResponse with the updated message
        """

    def process_message(self, message: PipelineMessage) -> AgentResponse:
        """Run talk with timing, statistics and error capture.

        Exceptions that escape talk become an unsuccessful response.
        """
        start_time = time.time()
        self.state = AgentState.PROCESSING
        try:
            self.logger.info(f"Processing stage with h_max={message.h_max}")
            response = self.talk(message)
        except Exception as e:
            execution_time = time.time() - start_time
            self._record(execution_time, False, str(e))
            self.logger.exception(f"Unexpected error in {self.agent_name}: {e}")
            return AgentResponse(success=False, message=message, error=f"{type(e).__name__}: {e}",
                                 execution_time=execution_time)
        execution_time = time.time() - start_time
        self._record(execution_time, response.success, response.error)
        response.execution_time = execution_time
        self.logger.info(f"Stage finished in {execution_time:.3f}s")
        return response

    def _record(self, execution_time: float, success: bool, error: Optional[str]) -> None:
        self.last_execution_time = execution_time
        self.total_execution_time += execution_time
        self.execution_count += 1
        if success:
            self.success_count += 1
            self.state = AgentState.COMPLETED
        else:
            self.error_count += 1
            self.last_error = error
            self.state = AgentState.ERROR

    def get_stats(self) -> Dict[str, Any]:
        """Get agent performance statistics."""
        runs = self.execution_count
        return {
            "agent_name": self.agent_name,
            "state": self.state.value,
            "execution_count": runs,
            "success_count": self.success_count,
            "error_count": self.error_count,
            "success_rate": self.success_count / runs if runs else 0.0,
            "total_execution_time": self.total_execution_time,
            "average_execution_time": self.total_execution_time / runs if runs else 0.0,
            "last_error": self.last_error,
        }

    def reset_stats(self):
        self.execution_count = 0
        self.success_count = 0
        self.error_count = 0
        self.total_execution_time = 0.0
        self.last_execution_time = 0.0
        self.last_error = None
        self.state = AgentState.IDLE

    def _prepare_response(self, message: PipelineMessage, success: bool = True,
                          error: Optional[str] = None, **kwargs) -> AgentResponse:
        """Standard response with the agent name in the metadata."""
        metadata = {"agent_name": self.agent_name, **kwargs}
        return AgentResponse(success=success, message=message, error=error, metadata=metadata)
