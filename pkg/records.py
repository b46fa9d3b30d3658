"""
Result records produced by the checks, and their emission as json-lines,
csv or an aligned human-readable table.
"""

from dataclasses import dataclass, fields
from enum import Enum
import json

import pandas as pd

from exceptions import UsageError

FORMATS = ('json-lines', 'csv', 'human')


class Record:
    """Mixin: ordered dict view plus a pass/fail flag."""

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def to_dict(self):
        return {name: getattr(self, name) for name in self.columns()}

    @property
    def passed(self):
        return True


class Class7(str, Enum):
    QR = 'QR'
    NQR = 'NQR'
    EXCLUDED = 'EXCLUDED'


class Verdict(str, Enum):
    ZERO_OK = 'ZERO_OK'
    TWO_A_OK = 'TWO_A_OK'
    FAIL = 'FAIL'
    SKIPPED = 'SKIPPED'


@dataclass(frozen=True)
class CountReport(Record):
    p: int
    a: int
    b: int
    N: int
    t: int
    bound_ok: bool
    d_one_minus_pi: int

    @property
    def passed(self):
        return self.bound_ok


@dataclass(frozen=True)
class SweepSummary(Record):
    p_min: int
    p_max: int
    primes: int
    curves: int
    failures: int
    extremal_primes: int
    max_ratio: float

    @property
    def passed(self):
        return self.failures == 0


@dataclass(frozen=True)
class ZagierRecord(Record):
    p: int
    class7: Class7
    S: int
    A: int
    B: int
    verdict: Verdict

    @property
    def passed(self):
        return self.verdict != Verdict.FAIL


@dataclass(frozen=True)
class ParallelogramRecord(Record):
    p: int
    a: int
    b: int
    left: str
    right: str
    lhs: int
    rhs: int
    u_constant: bool
    ok: bool

    @property
    def passed(self):
        return self.ok and self.u_constant


@dataclass(frozen=True)
class MultMapRecord(Record):
    p: int
    a: int
    b: int
    m: int
    degree: int
    oracle_ok: bool

    @property
    def passed(self):
        return self.oracle_ok and self.degree == self.m * self.m


@dataclass(frozen=True)
class CharEqRecord(Record):
    p: int
    a: int
    b: int
    m: int
    n: int
    tr: int
    nrm: int
    points: int
    ok: bool

    @property
    def passed(self):
        return self.ok


@dataclass(frozen=True)
class FuzzRecord(Record):
    check: str
    p: int
    case: str
    draws: int
    failures: int

    @property
    def passed(self):
        return self.failures == 0


@dataclass(frozen=True)
class ResultantRecord(Record):
    p: int
    a: int
    b: int
    value: int
    expected: int
    ok: bool

    @property
    def passed(self):
        return self.ok


def _token(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return ''
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, Enum):
        return json.dumps(value.value)
    return json.dumps(value)


def emit(records, fmt, sink, record_type=None):
    """Write a homogeneous record sequence to sink in the chosen format"""
    records = list(records)
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if record_type is None:
        if not records:
            if fmt == 'json-lines':
                return
            raise UsageError("record_type is needed to emit an empty table")
        record_type = type(records[0])
    if any(type(r) is not record_type for r in records):
        raise UsageError("emit expects records of a single type")

    columns = record_type.columns()
    if fmt == 'json-lines':
        for record in records:
            row = record.to_dict()
            body = ", ".join(f"{json.dumps(k)}: {_json_value(row[k])}" for k in columns)
            sink.write("{" + body + "}\n")
        return

    table = pd.DataFrame([[_token(v) for v in r.to_dict().values()] for r in records],
                         columns=columns)
    if fmt == 'csv':
        table.to_csv(sink, index=False, lineterminator='\n')
    elif records:
        sink.write(table.to_string(index=False) + "\n")
    else:
        sink.write("  ".join(columns) + "\n")
