"""数据 CSV 与结果/真值 JSON 的读写"""
import json
import logging
import os
import re

import numpy as np
import pandas as pd

from errors import InvalidDataError
from estimator.data import DataSet
from subspace.basis import Subspace

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'
_COLUMN = re.compile(r"x(\d+)$")


def ensure_writable(path, force: bool = False):
    if os.path.exists(path) and not force:
        raise FileExistsError(f"{path} already exists; pass --force to overwrite")
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)


def write_frame(path, frame: pd.DataFrame, force: bool = False):
    ensure_writable(path, force)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='',
                 lineterminator='\n', encoding='utf-8')
    logger.info("写入 %s (%d 行)", path, len(frame))


def write_data_csv(path, data: DataSet, force: bool = False):
    columns = [f"x{i}" for i in range(data.dim)]
    write_frame(path, pd.DataFrame(data.points, columns=columns), force)


def read_data_csv(path) -> DataSet:
    try:
        frame = pd.read_csv(path, float_precision='round_trip', encoding='utf-8')
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise InvalidDataError(f"malformed CSV {path}: {e}") from e
    expected = [f"x{i}" for i in range(frame.shape[1])]
    if list(frame.columns) != expected:
        raise InvalidDataError(f"malformed CSV {path}: header must be {','.join(expected)}")
    try:
        points = frame.to_numpy(dtype=float)
    except ValueError as e:
        raise InvalidDataError(f"malformed CSV {path}: {e}") from e
    return DataSet(points)


def write_json(path, payload: dict, force: bool = False):
    ensure_writable(path, force)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(json.dumps(payload, indent=2))
        file.write("\n")
    logger.info("写入 %s", path)


def read_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as file:
        try:
            return json.load(file)
        except json.JSONDecodeError as e:
            raise InvalidDataError(f"malformed JSON {path}: {e}") from e


def truth_payload(subspace: Subspace) -> dict:
    return {
        "D": subspace.ambient_dim,
        "d": subspace.dim,
        "basis": subspace.basis.tolist(),
    }


def read_truth_json(path) -> Subspace:
    payload = read_json(path)
    try:
        ambient_dim, dim = int(payload["D"]), int(payload["d"])
        basis = np.asarray(payload["basis"], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidDataError(f"unreadable truth {path}: {e}") from e
    if basis.shape != (ambient_dim, dim):
        raise InvalidDataError(f"unreadable truth {path}: basis shape {basis.shape} != ({ambient_dim}, {dim})")
    return Subspace(basis)
