"""Review sentiment classification with recurrent networks and provider reputation scoring."""

__version__ = "0.1.0"
