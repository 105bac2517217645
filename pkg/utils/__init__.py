"""
parapac - 工具函数
提供日志配置与实例文件解析
"""

from .logger import setup_logger
from .parser import dump_hitting_set, dump_instance, dump_scenario, parse_instance, parse_text

__all__ = ["setup_logger", "parse_instance", "parse_text", "dump_instance", "dump_hitting_set", "dump_scenario"]
