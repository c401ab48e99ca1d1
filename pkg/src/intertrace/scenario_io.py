"""
JSON scenario files.

A scenario file is a JSON object::

    {
      "systems": [
        {"label": "A", "prep": {"pauli": {"axis": "x", "sign": "+"}}},
        {"label": "M", "prep": {"matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}}
      ],
      "interactions": [
        {"pair": ["A", "M"], "kind": "heisenberg", "coupling": 1.0,
         "dt": 1e-4, "steps": 500}
      ],
      "policy": "all",
      "integrator": "euler"
    }

Complex entries are ``[re, im]`` pairs; a bare number is read as a real
entry. ``kind`` is ``"heisenberg"`` or ``"custom"``; custom couplings carry
their own ``"matrix"`` on the pair space (first label most significant).
Systems may carry an optional Hermitian ``"drift"`` matrix. Omitted fields
default to coupling 1, dt 1e-4, 500 steps, policy ``all`` and integrator
``euler``. See ``docs/scenario-format.md`` for the full schema.
"""

import json
import math

import numpy as np

from .chain import Interaction, Scenario, SystemSpec
from .cmatrix import DEFAULT_MAX_DIM
from .evolution import PAPER_DT, PAPER_STEPS, EvolutionParams
from .exceptions import IntertraceError, ScenarioError
from .hamiltonians import PairCouplingSpec
from .quantum import DensityMatrix, pauli_eigenstate, validate_density

TOP_KEYS = {"systems", "interactions", "policy", "integrator", "max_dim"}
SYSTEM_KEYS = {"label", "prep", "drift"}
INTERACTION_KEYS = {"pair", "kind", "coupling", "dt", "steps", "matrix"}


def _fail(path, message):
    raise ScenarioError(f"{path}: {message}")


def _expect(value, kind, path):
    if not isinstance(value, kind):
        _fail(path, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _check_keys(obj, allowed, path):
    extra = sorted(set(obj) - allowed)
    if extra:
        _fail(path, f"unknown key(s) {extra}; allowed keys are {sorted(allowed)}")


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(value):
        _fail(path, "number is not finite")
    return float(value)


def _complex_entry(value, path):
    if isinstance(value, list):
        if len(value) != 2:
            _fail(path, "complex entries must be [re, im] pairs")
        return complex(_number(value[0], path + "[0]"), _number(value[1], path + "[1]"))
    return complex(_number(value, path))


def parse_matrix(value, path="matrix"):
    rows = _expect(value, list, path)
    n = len(rows)
    if n == 0:
        _fail(path, "matrix is empty")
    m = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        row = _expect(row, list, f"{path}[{i}]")
        if len(row) != n:
            _fail(f"{path}[{i}]", f"row has {len(row)} entries, matrix must be {n}x{n}")
        for j, entry in enumerate(row):
            m[i, j] = _complex_entry(entry, f"{path}[{i}][{j}]")
    return m


def _parse_system(obj, path):
    obj = _expect(obj, dict, path)
    _check_keys(obj, SYSTEM_KEYS, path)
    if "label" not in obj:
        _fail(path, "missing 'label'")
    label = _expect(obj["label"], str, path + ".label")
    if not label:
        _fail(path + ".label", "label must be non-empty")
    prep = _expect(obj.get("prep"), dict, path + ".prep")
    ppath = path + ".prep"
    if set(prep) == {"pauli"}:
        spec = _expect(prep["pauli"], dict, ppath + ".pauli")
        _check_keys(spec, {"axis", "sign"}, ppath + ".pauli")
        axis = spec.get("axis")
        sign = spec.get("sign", "+")
        if axis not in ("x", "y", "z"):
            _fail(ppath + ".pauli.axis", f"unknown axis {axis!r}; expected one of x, y, z")
        if sign not in ("+", "-"):
            _fail(ppath + ".pauli.sign", f"unknown sign {sign!r}; expected '+' or '-'")
        state = pauli_eigenstate(axis, sign, label)
        prep_record = {"pauli": {"axis": axis, "sign": sign}}
    elif set(prep) == {"matrix"}:
        m = parse_matrix(prep["matrix"], ppath + ".matrix")
        diag = validate_density(m)
        if not diag.ok:
            _fail(ppath + ".matrix", f"not a valid density matrix ({_describe(diag)})")
        state = DensityMatrix.single(label, m)
        prep_record = None
    else:
        _fail(ppath, "prep must be exactly one of {'pauli': ...} or {'matrix': ...}")
    drift = None
    if "drift" in obj:
        drift = parse_matrix(obj["drift"], path + ".drift")
    try:
        return SystemSpec(label, state, prep_record, drift)
    except IntertraceError as exc:
        _fail(path, str(exc))


def _describe(diag):
    problems = []
    if not diag.trace_ok:
        problems.append(f"trace deviation {diag.trace_deviation:.2e}")
    if not diag.hermitian_ok:
        problems.append(f"Hermiticity deviation {diag.hermiticity_deviation:.2e}")
    if not diag.positive_ok:
        problems.append(f"minimum eigenvalue {diag.min_eigenvalue:.2e}")
    return ", ".join(problems)


def _parse_interaction(obj, path):
    obj = _expect(obj, dict, path)
    _check_keys(obj, INTERACTION_KEYS, path)
    pair = _expect(obj.get("pair"), list, path + ".pair")
    if len(pair) != 2:
        _fail(path + ".pair", f"an interaction involves exactly 2 systems, got {len(pair)}")
    for k, label in enumerate(pair):
        _expect(label, str, f"{path}.pair[{k}]")
    kind = obj.get("kind", "heisenberg")
    if kind not in ("heisenberg", "custom"):
        _fail(path + ".kind", f"unknown kind {kind!r}; expected 'heisenberg' or 'custom'")
    coupling = _number(obj.get("coupling", 1.0), path + ".coupling")
    dt = _number(obj.get("dt", PAPER_DT), path + ".dt")
    steps = obj.get("steps", PAPER_STEPS)
    if isinstance(steps, bool) or not isinstance(steps, int):
        _fail(path + ".steps", "steps must be an integer")
    matrix = None
    if kind == "custom":
        if "matrix" not in obj:
            _fail(path, "custom coupling requires 'matrix'")
        matrix = parse_matrix(obj["matrix"], path + ".matrix")
    elif "matrix" in obj:
        _fail(path + ".matrix", "only custom couplings take a matrix")
    try:
        return Interaction(
            PairCouplingSpec(pair[0], pair[1], coupling, kind, matrix),
            EvolutionParams(dt, steps),
        )
    except (IntertraceError, ValueError) as exc:
        _fail(path, str(exc))


def parse_scenario(text):
    """Parse and validate a scenario document (str or bytes)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioError(f"scenario file is not valid UTF-8 (byte {exc.start})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, exc.lineno, exc.colno) from None
    except (RecursionError, ValueError) as exc:
        raise ScenarioError(f"unreadable scenario document: {exc}") from None
    doc = _expect(doc, dict, "document")
    _check_keys(doc, TOP_KEYS, "document")
    if "systems" not in doc:
        _fail("document", "missing 'systems'")
    systems = [
        _parse_system(s, f"systems[{k}]")
        for k, s in enumerate(_expect(doc["systems"], list, "systems"))
    ]
    interactions = [
        _parse_interaction(obj, f"interactions[{k}]")
        for k, obj in enumerate(_expect(doc.get("interactions", []), list, "interactions"))
    ]
    policy = doc.get("policy", "all")
    integrator = doc.get("integrator", "euler")
    max_dim = doc.get("max_dim", DEFAULT_MAX_DIM)
    if isinstance(max_dim, bool) or not isinstance(max_dim, int) or max_dim < 1:
        _fail("max_dim", "max_dim must be a positive integer")
    return Scenario(tuple(systems), tuple(interactions), policy, integrator, max_dim)


def load_scenario(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc.strerror}") from None
    return parse_scenario(data)


def matrix_to_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def scenario_to_dict(scenario):
    systems = []
    for s in scenario.systems:
        prep = s.prep if s.prep is not None else {"matrix": matrix_to_json(s.state.matrix)}
        entry = {"label": s.label, "prep": prep}
        if s.drift is not None:
            entry["drift"] = matrix_to_json(s.drift)
        systems.append(entry)
    interactions = []
    for inter in scenario.interactions:
        c = inter.coupling
        entry = {
            "pair": [c.site_i, c.site_j],
            "kind": c.kind,
            "coupling": c.coupling,
            "dt": inter.params.dt,
            "steps": inter.params.steps,
        }
        if c.kind == "custom":
            entry["matrix"] = matrix_to_json(c.matrix)
        interactions.append(entry)
    doc = {
        "systems": systems,
        "interactions": interactions,
        "policy": scenario.policy,
        "integrator": scenario.integrator,
    }
    if scenario.max_dim != DEFAULT_MAX_DIM:
        doc["max_dim"] = scenario.max_dim
    return doc


def serialize_scenario(scenario):
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"
