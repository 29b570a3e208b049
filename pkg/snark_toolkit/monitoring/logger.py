"""
日志记录模块
提供统一的日志配置和管理功能
"""

import json
import logging
import logging.handlers
import os
import sys
import threading
from datetime import datetime
from typing import Any, Dict, Optional

from ..config import config


class ColoredFormatter(logging.Formatter):
    """彩色日志格式化器"""

    # ANSI颜色代码
    COLORS = {
        'DEBUG': '\033[36m',      # 青色
        'INFO': '\033[32m',       # 绿色
        'WARNING': '\033[33m',    # 黄色
        'ERROR': '\033[31m',      # 红色
        'CRITICAL': '\033[35m',   # 紫色
        'RESET': '\033[0m'        # 重置
    }

    def format(self, record):
        """格式化日志记录"""
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


class JSONFormatter(logging.Formatter):
    """JSON格式化器"""

    def format(self, record):
        """格式化为JSON"""
        log_entry = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'function': record.funcName,
            'line': record.lineno,
            'process': record.process
        }

        if record.exc_info:
            log_entry['exception'] = self.formatException(record.exc_info)

        # 上下文字段（由 log_with_context 注入）
        if hasattr(record, 'extra_fields'):
            log_entry.update(record.extra_fields)

        return json.dumps(log_entry, ensure_ascii=False)


class LogManager:
    """日志管理器"""

    def __init__(self):
        """初始化日志管理器"""
        self.loggers = {}
        self.handlers = {}
        self._lock = threading.Lock()
        self._setup_root_logger()

    def _default_level(self) -> int:
        if config.logging.DEBUG:
            return logging.DEBUG
        return getattr(logging, config.logging.LOG_LEVEL.upper(), logging.INFO)

    def _setup_root_logger(self):
        """设置工具包根日志记录器"""
        root_logger = logging.getLogger("snark_toolkit")
        root_logger.setLevel(self._default_level())
        root_logger.propagate = False

        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        root_logger.addHandler(self._create_console_handler())

        if config.logging.LOG_FILE or config.logging.LOG_DIR:
            handler = self._create_file_handler()
            root_logger.addHandler(handler)
            self.handlers['file'] = handler

    def _create_console_handler(self) -> logging.StreamHandler:
        """创建控制台处理器，输出到 stderr，stdout 留给结果文档"""
        handler = logging.StreamHandler(sys.stderr)

        if sys.stderr.isatty():
            formatter = ColoredFormatter(
                fmt=config.logging.LOG_FORMAT,
                datefmt='%Y-%m-%d %H:%M:%S'
            )
        else:
            formatter = logging.Formatter(
                fmt=config.logging.LOG_FORMAT,
                datefmt='%Y-%m-%d %H:%M:%S'
            )

        handler.setFormatter(formatter)
        handler.setLevel(self._default_level())

        self.handlers['console'] = handler
        return handler

    def _create_file_handler(self, log_file: Optional[str] = None) -> logging.Handler:
        """创建文件处理器"""
        if log_file is None:
            log_file = config.logging.LOG_FILE
        if log_file is None:
            log_dir = config.logging.LOG_DIR or './logs'
            os.makedirs(log_dir, exist_ok=True)
            log_file = os.path.join(log_dir, 'snark_toolkit.log')
        else:
            parent = os.path.dirname(log_file)
            if parent:
                os.makedirs(parent, exist_ok=True)

        # 使用RotatingFileHandler进行日志轮转
        handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=config.logging.LOG_MAX_SIZE,
            backupCount=config.logging.LOG_BACKUP_COUNT,
            encoding='utf-8'
        )

        formatter = logging.Formatter(
            fmt=config.logging.LOG_FORMAT,
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        handler.setFormatter(formatter)
        handler.setLevel(logging.DEBUG)
        return handler

    def _create_json_handler(self, log_file: str) -> logging.Handler:
        """创建JSON文件处理器"""
        parent = os.path.dirname(log_file)
        if parent:
            os.makedirs(parent, exist_ok=True)
        handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=config.logging.LOG_MAX_SIZE,
            backupCount=config.logging.LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        handler.setFormatter(JSONFormatter())
        handler.setLevel(logging.DEBUG)
        return handler

    def get_logger(self, name: str, **kwargs) -> logging.Logger:
        """获取日志记录器"""
        with self._lock:
            if name in self.loggers:
                return self.loggers[name]

            logger = logging.getLogger(name)
            if 'level' in kwargs:
                logger.setLevel(kwargs['level'])

            self.loggers[name] = logger
            return logger

    def set_level(self, level: str, logger_name: Optional[str] = None):
        """设置日志级别"""
        log_level = getattr(logging, level.upper(), logging.INFO)

        if logger_name:
            logging.getLogger(logger_name).setLevel(log_level)
        else:
            logging.getLogger("snark_toolkit").setLevel(log_level)
            console = self.handlers.get('console')
            if console is not None:
                console.setLevel(log_level)

    def set_log_dir(self, log_dir: str) -> Optional[logging.Handler]:
        """
        切换日志目录。没有指定 LOG_FILE 时，默认文件处理器改写到新目录。

        返回:
            新的文件处理器；指定了 LOG_FILE 时为 None
        """
        config.logging.LOG_DIR = log_dir
        os.makedirs(log_dir, exist_ok=True)
        if config.logging.LOG_FILE:
            return None

        root_logger = logging.getLogger("snark_toolkit")
        old = self.handlers.pop('file', None)
        if old is not None:
            root_logger.removeHandler(old)
            old.close()
        handler = self._create_file_handler()
        root_logger.addHandler(handler)
        self.handlers['file'] = handler
        return handler

    def add_file_output(self, log_file: str, logger_name: Optional[str] = None):
        """添加文件输出"""
        handler = self._create_file_handler(log_file)
        logging.getLogger(logger_name or "snark_toolkit").addHandler(handler)
        self.handlers[f'file_{log_file}'] = handler

    def add_json_output(self, log_file: str, logger_name: Optional[str] = None):
        """添加JSON文件输出"""
        handler = self._create_json_handler(log_file)
        logging.getLogger(logger_name or "snark_toolkit").addHandler(handler)
        self.handlers[f'json_{log_file}'] = handler

    def get_log_stats(self) -> Dict[str, Any]:
        """获取日志统计信息"""
        stats = {
            'loggers_count': len(self.loggers),
            'handlers_count': len(self.handlers),
            'root_level': logging.getLogger("snark_toolkit").level,
            'handlers': []
        }

        for name, handler in self.handlers.items():
            handler_info = {
                'name': name,
                'type': type(handler).__name__,
                'level': handler.level
            }
            if hasattr(handler, 'baseFilename'):
                handler_info['file'] = handler.baseFilename
            stats['handlers'].append(handler_info)

        return stats


# 全局日志管理器实例
_log_manager = LogManager()


def setup_logger(name: str, **kwargs) -> logging.Logger:
    """
    设置日志记录器

    参数:
        name: 日志记录器名称（通常为 __name__）
        **kwargs: 配置参数
            - level: 日志级别

    返回:
        配置好的日志记录器
    """
    return _log_manager.get_logger(name, **kwargs)


def set_log_level(level: str, logger_name: Optional[str] = None):
    """设置日志级别"""
    _log_manager.set_level(level, logger_name)


def set_log_dir(log_dir: str) -> Optional[logging.Handler]:
    """切换日志目录"""
    return _log_manager.set_log_dir(log_dir)


def add_file_logging(log_file: str, logger_name: Optional[str] = None):
    """添加文件日志输出"""
    _log_manager.add_file_output(log_file, logger_name)


def add_json_logging(log_file: str, logger_name: Optional[str] = None):
    """添加JSON文件日志输出"""
    _log_manager.add_json_output(log_file, logger_name)


def get_logging_stats() -> Dict[str, Any]:
    """获取日志统计信息"""
    return _log_manager.get_log_stats()


class ContextAdapter(logging.LoggerAdapter):
    """把上下文字段写入消息前缀和 JSON 日志"""

    def process(self, msg, kwargs):
        fields = dict(self.extra)
        extra = kwargs.setdefault('extra', {})
        extra['extra_fields'] = fields
        prefix = " ".join(f"{key}={value}" for key, value in fields.items())
        return f"[{prefix}] {msg}", kwargs


class LogContext:
    """日志上下文管理器"""

    def __init__(self, logger: logging.Logger, extra_fields: Dict[str, Any]):
        """初始化日志上下文"""
        self.logger = logger
        self.extra_fields = extra_fields

    def __enter__(self) -> ContextAdapter:
        """进入上下文"""
        return ContextAdapter(self.logger, self.extra_fields)

    def __exit__(self, exc_type, exc_val, exc_tb):
        """退出上下文"""
        return False


def log_with_context(logger: logging.Logger, **extra_fields) -> LogContext:
    """
    带上下文的日志记录

    Usage:
        with log_with_context(logger, step="criterion-4") as log:
            log.info("计算转移关系")
    """
    return LogContext(logger, extra_fields)
