"""
pwlab - 射影结构的 Patterson–Walker 度量精确计算实验室
"""

__version__ = "1.0.0"
