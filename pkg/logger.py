import logging
import sys
import os


def setup_logging(logger: dict):
    """配置全局日志"""
    handlers = [logging.StreamHandler(sys.stdout)]
    log_dir = logger.get('log_dir')
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(os.path.join(log_dir, "subrec.log"), encoding='utf-8'))

    logging.basicConfig(
        level=logger.get('level', 'INFO'),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True
    )
    return logging.getLogger(__name__)
