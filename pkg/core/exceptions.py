"""
parapac - 异常体系
定义工具包中的各类异常
"""

from typing import Optional


class ParapacException(Exception):
    """parapac基础异常类"""
    pass


class ConfigError(ParapacException):
    """配置错误"""
    pass


class InputError(ParapacException):
    """输入不满足类型不变量或前置条件"""
    pass


class ParseError(InputError):
    """实例文件格式错误，附带行号与字段诊断"""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, field: Optional[str] = None):
        self.path = path
        self.line = line
        self.field = field
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"第{line}行")
        if field:
            where.append(f"字段 {field}")
        prefix = f"[{' '.join(where)}] " if where else ""
        super().__init__(f"{prefix}{message}")


class GuardError(ParapacException):
    """枚举空间超过保护上限"""
    pass


class RealizabilityError(ParapacException):
    """学习器内部的一致性检查返回不一致（场景与概念类不匹配）"""
    pass


class SetTooSmallError(InputError):
    """FVS构造要求每个集合至少含3个元素"""

    def __init__(self, members):
        self.members = tuple(sorted(members))
        super().__init__(f"集合 {set(self.members) or '{}'} 少于3个元素，无法构成简单环")


class KernelError(ParapacException):
    """核化内部不变量失败（界限或解提升），表示实现缺陷"""
    pass
