"""
统一异常定义
所有模块抛出的业务异常都继承 PWLabError，运行器据此把单个检查标记为 error
"""

from typing import Optional


class PWLabError(Exception):
    """pwlab 异常基类"""


class PolynomialSyntaxError(PWLabError):
    """多项式字面量语法错误"""

    def __init__(self, message: str, text: str, column: int, line: int = 1, token: str = ""):
        self.text = text
        self.column = column
        self.line = line
        self.token = token
        super().__init__(f"{message} (第 {line} 行, 第 {column} 列, 记号 {token!r}): {text!r}")


class UnknownVariableError(PWLabError):
    """未声明的坐标变量"""

    def __init__(self, name: str, known: Optional[tuple] = None):
        self.name = name
        self.known = known or ()
        hint = f"，可用: {', '.join(self.known)}" if self.known else ""
        super().__init__(f"未知变量 {name!r}{hint}")


class SlotMismatchError(PWLabError):
    """张量槽位不兼容"""


class GradingError(PWLabError):
    """p 分级失败：非多项式依赖或出现不允许的次数"""


class DimensionError(PWLabError):
    """维数不满足要求"""


class NotSpecialError(PWLabError):
    """需要特殊联络"""

    def __init__(self, what: str = "该操作"):
        super().__init__(f"{what}需要特殊联络 (Γ_A^C_C = ∂_A log e)，请先调用 special_part 取特殊代表")


class WeightMismatchError(PWLabError):
    """射影/共形权不匹配"""


class PreconditionError(PWLabError):
    """前置条件不满足，condition 命名具体哪一条"""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        suffix = f": {detail}" if detail else ""
        super().__init__(f"前置条件不满足 [{condition}]{suffix}")


class ScenarioError(PWLabError):
    """场景文件校验失败"""

    def __init__(self, message: str, path: str = "", line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = path
        if line is not None:
            where = f"{path} 第 {line} 行第 {column} 列".strip()
        super().__init__(f"{where}: {message}" if where else message)
