"""
snark-toolkit 配置模块

该模块包含搜索、圆流、日志和输出的所有配置设置，
包括环境变量、默认值和验证。
"""

import os
from typing import Optional
from pathlib import Path
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()


class SearchConfig:
    """回溯搜索和并行设置"""

    # 并行进程数（1 表示在当前进程中顺序执行）
    THREADS: int = int(os.getenv("SNARK_THREADS", "1"))

    # 随机偶极子生成的种子
    SEED: int = int(os.getenv("SNARK_SEED", "20240601"))

    # 完美匹配指数搜索上限
    PMI_CAP: int = int(os.getenv("SNARK_PMI_CAP", "5"))

    # 超过该顶点数时 auto 策略改用四面体流判定 π ≤ 4
    COVER_STRATEGY_MAX_VERTICES: int = int(os.getenv("SNARK_COVER_MAX_VERTICES", "20"))

    # 随机可容许性测试
    RANDOM_DIPOLE_COUNT: int = int(os.getenv("SNARK_RANDOM_DIPOLES", "200"))
    RANDOM_DIPOLE_MAX_VERTICES: int = int(os.getenv("SNARK_RANDOM_DIPOLE_MAX_VERTICES", "12"))

    # 小规模普查的最大顶点数
    CENSUS_MAX_VERTICES: int = int(os.getenv("SNARK_CENSUS_MAX_VERTICES", "10"))


class CircularConfig:
    """圆流数和流模板设置"""

    # 法里候选的分母上限
    Q_MAX: int = int(os.getenv("SNARK_Q_MAX", "3"))

    # 超边模板: 整数 12-流，|值| ∈ [3, 11]，最后除以 3
    TEMPLATE_SCALE: int = 3
    TEMPLATE_MAX_VALUE: int = int(os.getenv("SNARK_TEMPLATE_MAX_VALUE", "11"))

    # 单个模板边界值查询的搜索节点上限，超出后该边界值记为未决
    TEMPLATE_NODE_LIMIT: int = int(os.getenv("SNARK_TEMPLATE_NODE_LIMIT", "500000"))


class LoggingConfig:
    """日志配置"""

    # 日志级别
    LOG_LEVEL: str = os.getenv("SNARK_LOG_LEVEL", "INFO")

    # 日志格式
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # 日志文件设置
    LOG_DIR: Optional[str] = os.getenv("SNARK_LOG_DIR")
    LOG_FILE: Optional[str] = os.getenv("SNARK_LOG_FILE")
    LOG_MAX_SIZE: int = int(os.getenv("SNARK_LOG_MAX_SIZE", "10485760"))  # 10MB
    LOG_BACKUP_COUNT: int = int(os.getenv("SNARK_LOG_BACKUP_COUNT", "5"))

    DEBUG: bool = os.getenv("SNARK_DEBUG", "False").lower() == "true"


class OutputConfig:
    """结果文档输出设置"""

    JSON_INDENT: int = int(os.getenv("SNARK_JSON_INDENT", "2"))


class Config:
    """主配置类，聚合所有设置"""

    search = SearchConfig()
    circular = CircularConfig()
    logging = LoggingConfig()
    output = OutputConfig()

    @classmethod
    def validate(cls) -> bool:
        """验证配置设置"""
        errors = []

        if cls.search.THREADS < 1:
            errors.append(f"无效的并行数: {cls.search.THREADS}")

        if cls.search.PMI_CAP < 3:
            errors.append(f"完美匹配指数上限必须 ≥ 3: {cls.search.PMI_CAP}")

        if not (4 <= cls.search.RANDOM_DIPOLE_MAX_VERTICES <= 64):
            errors.append(f"随机偶极子顶点上限超出范围: {cls.search.RANDOM_DIPOLE_MAX_VERTICES}")

        if cls.circular.Q_MAX < 1:
            errors.append(f"q_max 必须为正整数: {cls.circular.Q_MAX}")

        if cls.circular.TEMPLATE_MAX_VALUE < 2 * cls.circular.TEMPLATE_SCALE:
            errors.append(f"模板取值上限过小: {cls.circular.TEMPLATE_MAX_VALUE}")

        if cls.logging.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"未知的日志级别: {cls.logging.LOG_LEVEL}")

        if cls.logging.LOG_DIR:
            try:
                Path(cls.logging.LOG_DIR).mkdir(parents=True, exist_ok=True)
            except Exception as e:
                errors.append(f"无法创建目录 {cls.logging.LOG_DIR}: {e}")

        if errors:
            raise ValueError("配置验证失败:\n" + "\n".join(errors))

        return True

    @classmethod
    def get_summary(cls) -> dict:
        """获取配置摘要用于日志记录"""
        return {
            "search": {
                "threads": cls.search.THREADS,
                "seed": cls.search.SEED,
                "pmi_cap": cls.search.PMI_CAP,
                "random_dipoles": cls.search.RANDOM_DIPOLE_COUNT,
            },
            "circular": {
                "q_max": cls.circular.Q_MAX,
                "template_max_value": cls.circular.TEMPLATE_MAX_VALUE,
                "template_node_limit": cls.circular.TEMPLATE_NODE_LIMIT,
            },
            "logging": {
                "level": cls.logging.LOG_LEVEL,
                "log_dir": cls.logging.LOG_DIR,
            },
        }


# 全局配置实例
config = Config()
