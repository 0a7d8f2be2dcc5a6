import copy
import os
from pathlib import Path

import psutil
import yaml

DEFAULT_CONFIG_PATH = Path(__file__).with_name("default.yml")

DEFAULTS = {
    'logger': {'level': 'INFO', 'log_dir': None},
    'estimator': {'tol': 1e-8, 'max_iter': 1000, 'breakdown_check': True},
    'experiment': {'trials': 20, 'threads': '${SUBREC_THREADS}'},
}


def read_config(config_path):
    with open(config_path, "r", encoding="utf-8") as file:
        config = yaml.safe_load(file)
    return config or {}


def load_config(config_path=None):
    """加载配置文件，缺省项使用内置默认值"""
    path = config_path or DEFAULT_CONFIG_PATH
    return resolve_env_vars(merge_defaults(read_config(path)))


def merge_defaults(config: dict):
    merged = copy.deepcopy(DEFAULTS)
    for section, values in config.items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section].update({k: v for k, v in values.items() if v is not None})
        else:
            merged[section] = values
    return merged


def resolve_env_vars(value):
    """解析 ${VAR_NAME} 形式的环境变量"""
    if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
        env_var = value[2:-1]  # 去掉 ${}
        return os.environ.get(env_var, "")  # 获取环境变量值，若不存在返回空字符串
    elif isinstance(value, dict):
        return {k: resolve_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [resolve_env_vars(v) for v in value]
    return value


def resolve_threads(experiment: dict) -> int:
    """试验并行线程数：配置值优先，否则取逻辑处理器个数"""
    threads = experiment.get('threads')
    if threads not in (None, ''):
        value = int(threads)
        if value < 1:
            raise ValueError(f"threads must be >= 1, got {value}")
        return value
    return psutil.cpu_count(logical=True) or 1
