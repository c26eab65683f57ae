"""bianchi_padic: p-adic L-functions of ordinary base-change Bianchi forms of CM Hecke characters."""

__version__ = "0.1.0"

from .config import PipelineConfig
from .exceptions import StageError
from .pipeline import COMMANDS, Pipeline, run
from .reporting import RunReport

__all__ = ["COMMANDS", "Pipeline", "PipelineConfig", "RunReport", "StageError", "__version__", "run"]
