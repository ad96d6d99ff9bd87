import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

HERE = os.path.dirname(os.path.abspath(__file__))


class Settings(BaseModel):
    corpus_dir: str = Field(default=os.path.join(HERE, "corpus"))
    seed: int = 20240601
    log_level: str = "INFO"
    max_cosets: int = Field(default=10000, gt=0)
    budget_n: int = Field(default=5, ge=0)
    degree_bound: int = Field(default=4, ge=2)
    iso_budget: int = Field(default=10 ** 7, gt=0)
    report_log_dir: str = "verify_logs"

    @classmethod
    def from_env(cls) -> "Settings":
        """Read FPFORGE_* variables (a .env file is loaded on import); unset ones keep their defaults."""
        names = {
            "corpus_dir": "FPFORGE_CORPUS",
            "seed": "FPFORGE_SEED",
            "log_level": "FPFORGE_LOG_LEVEL",
            "max_cosets": "FPFORGE_MAX_COSETS",
            "budget_n": "FPFORGE_BUDGET_N",
            "degree_bound": "FPFORGE_DEGREE_BOUND",
            "iso_budget": "FPFORGE_ISO_BUDGET",
            "report_log_dir": "FPFORGE_REPORT_LOG",
        }
        values = {field: os.getenv(var) for field, var in names.items()}
        return cls(**{k: v for k, v in values.items() if v not in (None, "")})
