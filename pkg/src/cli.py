"""
Command-line front end: brackets, normal forms, module actions, the
Whittaker-vector solver, character checks, descent and the quadratic
Whittaker vector demonstration. Reports are JSON (sorted keys) or text.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from characters import Character, CharacterAnalyzer, Ideal
from config import (
    BLOCKALG_LOG_LEVEL,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    REPORT_FORMATS,
    load_defaults,
)
from enveloping import UEAElement, format_element
from lie_core import QDegree, bracket, require_generator
from serialization import (
    SchemaError,
    character_from_json,
    dumps,
    element_from_json,
    ideal_from_json,
    loads,
    to_jsonable,
    vector_from_json,
)
from whittaker import (
    Cutoff,
    DescentError,
    ModuleVector,
    Truncation,
    WhittakerModule,
    default_i_max,
    format_vector,
)

logger = logging.getLogger(__name__)

INDEX_OPTIONS = ("--x", "--y")
NEGATIVE_INDEX = re.compile(r"^-\d+,\s*-?\d+$")


class UsageError(ValueError):
    """Bad command line"""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own; input errors here exit with 1
    def error(self, message):
        raise UsageError(message)


def parse_index(text: str) -> QDegree:
    """'a,i' -> generator index"""
    pieces = str(text).split(",")
    if len(pieces) != 2:
        raise UsageError(f"Generator index must look like 'a,i', got {text!r}")
    try:
        return require_generator((int(pieces[0]), int(pieces[1])))
    except ValueError as e:
        raise UsageError(f"Bad generator index {text!r}: {e}")


def _join_negative_indices(argv: List[str]) -> List[str]:
    """Let '--y -1,2' through; argparse would read -1,2 as an option"""
    joined = []
    k = 0
    while k < len(argv):
        token = argv[k]
        if token in INDEX_OPTIONS and k + 1 < len(argv) and NEGATIVE_INDEX.match(argv[k + 1]):
            joined.append(f"{token}={argv[k + 1]}")
            k += 2
            continue
        joined.append(token)
        k += 1
    return joined


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockalg", description="Exact computations for Whittaker modules of a Block-type Lie algebra")
    parser.add_argument("--input", help="JSON job file holding the command and its parameters")
    parser.add_argument("--output", help="Write the report here instead of stdout")
    parser.add_argument("--format", choices=REPORT_FORMATS, default=None, help="Report format (default json)")
    parser.add_argument("--log-level", default=None, help="Logging level (default from BLOCKALG_LOG_LEVEL)")

    commands = parser.add_subparsers(dest="command")

    bracket_cmd = commands.add_parser("bracket", help="Bracket of two generators")
    bracket_cmd.add_argument("--x")
    bracket_cmd.add_argument("--y")

    normalize_cmd = commands.add_parser("normalize", help="PBW normal form of an element")
    normalize_cmd.add_argument("--element")

    act_cmd = commands.add_parser("act", help="Act with an element on a module vector")
    act_cmd.add_argument("--element")
    act_cmd.add_argument("--vector")
    act_cmd.add_argument("--character")
    act_cmd.add_argument("--ideal", help="Overrides the vector's ideal")

    solve_cmd = commands.add_parser("solve", help="Whittaker vectors in a truncated candidate space")
    solve_cmd.add_argument("--character")
    solve_cmd.add_argument("--ideal")
    solve_cmd.add_argument("--pi-min", type=int)
    solve_cmd.add_argument("--part-i-max", type=int)
    solve_cmd.add_argument("--len-max", type=int)
    solve_cmd.add_argument("--sum-max", type=int)
    solve_cmd.add_argument("--i-max", type=int)

    check_cmd = commands.add_parser("check-character", help="Nonsingularity and Hankel rank evidence")
    check_cmd.add_argument("--spec")
    check_cmd.add_argument("--n-max", type=int)
    check_cmd.add_argument("--s-max", type=int)
    check_cmd.add_argument("--m-max", type=int)

    descent_cmd = commands.add_parser("descent", help="Walk defects down to a Whittaker vector")
    descent_cmd.add_argument("--vector")
    descent_cmd.add_argument("--character")
    descent_cmd.add_argument("--ideal", help="Overrides the vector's ideal")
    descent_cmd.add_argument("--sum-max", type=int)
    descent_cmd.add_argument("--i-max", type=int)
    descent_cmd.add_argument("--max-steps", type=int)

    demo_cmd = commands.add_parser("demo-counterexample", help="Check the quadratic Whittaker vector for phi = 1")
    demo_cmd.add_argument("--sum-max", type=int)
    demo_cmd.add_argument("--i-max", type=int)

    return parser


def load_job(path: str) -> Dict:
    """Read a JobConfig file: {"command": ..., "<option>": value, ...}"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Job file not found: {path}")
    job = loads(path.read_text(encoding="utf-8"), "")
    if not isinstance(job, dict):
        raise SchemaError("", "job file must hold a JSON object")
    return job


def apply_job(args: argparse.Namespace, job: Dict) -> argparse.Namespace:
    """Fill options missing from the command line with job-file values"""
    command = job.get("command")
    if args.command is None:
        args.command = command
    elif command is not None and command != args.command:
        raise UsageError(f"Job file is for '{command}', command line asks for '{args.command}'")
    for key, value in job.items():
        if key == "command":
            continue
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)
    return args


def _json_arg(value, name: str):
    """Option value as parsed JSON; job files may already hold objects"""
    if value is None:
        raise UsageError(f"Missing --{name.replace('_', '-')}")
    if isinstance(value, str):
        return loads(value, name)
    return value


def _int_arg(args, name: str, default, minimum: Optional[int] = None, maximum: Optional[int] = None) -> int:
    value = getattr(args, name, None)
    if value is None:
        value = default
    if not isinstance(value, int) or isinstance(value, bool):
        raise UsageError(f"--{name.replace('_', '-')} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise UsageError(f"--{name.replace('_', '-')} must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise UsageError(f"--{name.replace('_', '-')} must be <= {maximum}, got {value}")
    return value


def _cutoff(args, defaults: Dict) -> Cutoff:
    return Cutoff(
        _int_arg(args, "sum_max", defaults["sum_max"], minimum=2),
        _int_arg(args, "i_max", defaults["i_max"], minimum=0),
    )


def _module_for(args, vector_data) -> Tuple[WhittakerModule, ModuleVector]:
    character = character_from_json(_json_arg(args.character, "character"), "character")
    ideal = None
    if getattr(args, "ideal", None) is not None:
        ideal = ideal_from_json(_json_arg(args.ideal, "ideal"), "ideal")
    vector = vector_from_json(vector_data, "vector", ideal)
    if ideal is not None and vector.ideal != ideal:
        vector = ModuleVector(vector.terms, ideal)
    return WhittakerModule(character, vector.ideal), vector


def cmd_bracket(args, defaults: Dict) -> Tuple[Dict, int]:
    if args.x is None or args.y is None:
        raise UsageError("bracket needs --x and --y")
    x, y = parse_index(args.x), parse_index(args.y)
    term = bracket(x, y)
    result = UEAElement.zero() if term is None else UEAElement.generator(term.target, term.coefficient)
    return {"command": "bracket", "x": x, "y": y, "result": result}, EXIT_OK


def cmd_normalize(args, defaults: Dict) -> Tuple[Dict, int]:
    element = element_from_json(_json_arg(args.element, "element"), "element")
    return {"command": "normalize", "result": element}, EXIT_OK


def cmd_act(args, defaults: Dict) -> Tuple[Dict, int]:
    element = element_from_json(_json_arg(args.element, "element"), "element")
    module, vector = _module_for(args, _json_arg(args.vector, "vector"))
    result = module.act_elem(element, vector)
    return {"command": "act", "character": module.character, "result": result}, EXIT_OK


def cmd_solve(args, defaults: Dict) -> Tuple[Dict, int]:
    character = character_from_json(_json_arg(args.character, "character"), "character")
    ideal = ideal_from_json(_json_arg(args.ideal, "ideal"), "ideal")
    truncation = Truncation(
        _int_arg(args, "pi_min", defaults["pi_min"], maximum=0),
        _int_arg(args, "part_i_max", defaults["part_i_max"], minimum=0),
        _int_arg(args, "len_max", defaults["len_max"], minimum=0),
    )
    # i_max scales with the truncation unless given explicitly
    cutoff = Cutoff(
        _int_arg(args, "sum_max", defaults["sum_max"], minimum=2),
        _int_arg(args, "i_max", default_i_max(truncation), minimum=0),
    )

    module = WhittakerModule(character, ideal)
    solution = module.solve_system(truncation, cutoff)
    rechecked = all(module.is_whittaker(v, cutoff) for v in solution.basis)
    report = {
        "command": "solve",
        "character": character,
        "ideal": ideal,
        "parameters": {"truncation": truncation._asdict(), "cutoff": cutoff._asdict()},
        "candidates": len(solution.candidates),
        "rows": solution.rows,
        "dimension": len(solution.basis),
        "basis": solution.basis,
        "basis_rechecked": rechecked,
        "verdict": "at cutoff"
    }
    return report, EXIT_OK if rechecked else EXIT_VERIFICATION_FAILED


def cmd_check_character(args, defaults: Dict) -> Tuple[Dict, int]:
    character = character_from_json(_json_arg(args.spec, "spec"), "spec")
    n_max = _int_arg(args, "n_max", 1, minimum=1)
    s_max = _int_arg(args, "s_max", 1, minimum=1)
    m_max = None if args.m_max is None else _int_arg(args, "m_max", None, minimum=1)
    report = CharacterAnalyzer(character).good_check(n_max, s_max, m_max)
    report["command"] = "check-character"
    return report, EXIT_OK


def cmd_descent(args, defaults: Dict) -> Tuple[Dict, int]:
    module, vector = _module_for(args, _json_arg(args.vector, "vector"))
    cutoff = _cutoff(args, defaults)
    max_steps = _int_arg(args, "max_steps", defaults["max_steps"], minimum=1)
    report = {
        "command": "descent",
        "character": module.character,
        "start": vector,
        "parameters": {"cutoff": cutoff._asdict(), "max_steps": max_steps},
    }
    try:
        result = module.descent(vector, cutoff, max_steps)
    except DescentError as e:
        logger.error(f"Descent stuck ({e.reason}): {e}")
        report["stuck"] = {"reason": e.reason, "message": str(e), "trace": [_step(s) for s in e.trace]}
        return report, EXIT_VERIFICATION_FAILED
    report["whittaker_vector"] = result.vector
    report["trace"] = [_step(s) for s in result.steps]
    return report, EXIT_OK


def _step(step) -> Dict:
    return {"generator": step.generator, "mindeg1": step.mindeg1, "ell1": step.ell1, "vector": step.vector}


def demo_vectors(ideal: Ideal) -> Dict[str, ModuleVector]:
    """The linear and quadratic Whittaker vectors for phi = 1, alpha = (0,1), beta = (-1,2)"""
    alpha, beta = QDegree(0, 1), QDegree(-1, 2)
    return {
        "linear": ModuleVector({(alpha,): 2, (beta,): -1}, ideal),
        "quadratic": ModuleVector({(alpha, alpha): 4, (beta, beta): 1, (alpha, beta): -4}, ideal),
    }


def cmd_demo_counterexample(args, defaults: Dict) -> Tuple[Dict, int]:
    cutoff = _cutoff(args, defaults)
    cases = []
    for ideal in (Ideal.linear(1), Ideal.linear(0)):
        module = WhittakerModule(Character.constant(1), ideal)
        for name, vector in demo_vectors(ideal).items():
            check = module.whittaker_check(vector, cutoff)
            cases.append({
                "ideal": ideal,
                "name": name,
                "vector": vector,
                "passed": check.passed,
                "generators_checked": check.checked,
                "witness": check.witness,
                "defect_x(2,0)_zero": module.defect((2, 0), vector).is_zero()
            })
    passed = all(case["passed"] for case in cases)
    report = {
        "command": "demo-counterexample",
        "character": Character.constant(1),
        "parameters": {"cutoff": cutoff._asdict()},
        "cases": cases,
        "verdict": "Whittaker at cutoff" if passed else "not Whittaker at cutoff"
    }
    return report, EXIT_OK if passed else EXIT_VERIFICATION_FAILED


COMMANDS = {
    "bracket": cmd_bracket,
    "normalize": cmd_normalize,
    "act": cmd_act,
    "solve": cmd_solve,
    "check-character": cmd_check_character,
    "descent": cmd_descent,
    "demo-counterexample": cmd_demo_counterexample,
}


def render_text(value, indent: int = 0) -> str:
    """Readable report: elements and vectors in x(a,i) notation"""
    pad = "  " * indent
    if isinstance(value, ModuleVector):
        return format_vector(value)
    if isinstance(value, UEAElement):
        return format_element(value)
    if isinstance(value, dict):
        lines = []
        for key in sorted(value, key=str):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {render_text(item)}")
        return "\n".join(lines)
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {render_text(item)}")
        return "\n".join(lines)
    plain = to_jsonable(value)
    return plain if isinstance(plain, str) else json.dumps(plain)


def emit(report: Dict, report_format: str, output: Optional[str]):
    text = dumps(report) if report_format == "json" else render_text(report)
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"Report written to {path}")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report_format = "json"
    try:
        args = build_parser().parse_args(_join_negative_indices(argv))
        if args.input:
            args = apply_job(args, load_job(args.input))
        report_format = args.format or "json"
        if report_format not in REPORT_FORMATS:
            raise UsageError(f"--format must be one of {REPORT_FORMATS}")

        logging.basicConfig(level=(args.log_level or BLOCKALG_LOG_LEVEL).upper())
        if args.command not in COMMANDS:
            raise UsageError(f"Unknown or missing command: {args.command!r}, expected one of {sorted(COMMANDS)}")

        defaults = load_defaults()
        report, code = COMMANDS[args.command](args, defaults)
        report["defaults"] = defaults
        emit(report, report_format, args.output)
        return code

    except (ValueError, FileNotFoundError) as e:
        logger.error(f"Input error: {e}")
        diagnostic = {"error": str(e)}
        if isinstance(e, SchemaError):
            diagnostic["path"] = e.path
        if report_format == "json":
            print(json.dumps(diagnostic, sort_keys=True), file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
