"""
parapac - 配置管理模块
基于pydantic-settings的类型安全配置系统
"""

import os

from dotenv import load_dotenv
from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigError

load_dotenv()  # 加载.env文件

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]


class ParapacConfig(BaseSettings):
    """parapac核心配置"""
    model_config = SettingsConfigDict(env_prefix="PARAPAC_", env_file=".env", extra="ignore")

    # 实验配置
    seed: int = Field(0, description="learn 子命令未给出 --seed 时使用的种子")
    jobs: int = Field(default_factory=lambda: os.cpu_count() or 1)

    # 搜索保护
    brute_force_guard: int = Field(10 ** 7)
    term_search_guard: int = Field(10 ** 7)

    # 分布配置
    weight_tolerance: float = Field(1e-9)

    # 日志配置
    log_level: str = Field("INFO")
    log_file: str = Field("")

    @field_validator("seed")
    @classmethod
    def seed_range(cls, v):
        """种子必须是64位无符号整数"""
        if not (0 <= v < 2 ** 64):
            raise ValueError("seed必须在[0, 2^64)之间")
        return v

    @field_validator("jobs", "brute_force_guard", "term_search_guard")
    @classmethod
    def positive(cls, v):
        if v < 1:
            raise ValueError("必须为正整数")
        return v

    @field_validator("weight_tolerance")
    @classmethod
    def tolerance_range(cls, v):
        if not (0 < v < 1e-3):
            raise ValueError("weight_tolerance必须在(0, 1e-3)之间")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_level(cls, v):
        """验证日志级别合法性"""
        v = v.upper()
        if v not in LOG_LEVELS:
            raise ValueError(f"不支持的日志级别: {v}")
        return v


# 全局配置实例
try:
    config = ParapacConfig()
except ValidationError as e:
    raise ConfigError(f"配置无效: {e}") from e
