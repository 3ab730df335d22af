"""pauli-normalizer command line.

Exit codes: 0 success, 1 domain error (not symplectic, not in the normalizer,
not prime, ...), 2 parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError, NotInGroup, ParseError
from .normalizer import AutomorphismRep, ad_B, build_B, build_B_inverse, coeff_matrix, lift, out_I
from .oracle import enumerate_by_form, generator_closure, minus_coset, order_formula
from .pauli import build_I, build_P, build_Q, commutation_relations, omega
from .symplectic import (
    GeneratorWord,
    build_D,
    build_S,
    decompose,
    form_J,
    is_symplectic,
    outer_diag,
    six_residuals,
    step2_sk_word,
)
from .zmod import ZModMatrix, ZModScalar, require_prime

EQ_NAMES = ("I", "II", "III", "IV", "V", "VI")


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(args, payload: dict, human: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _fmt_matrix(M: ZModMatrix) -> str:
    return "\n".join(" ".join(f"{x:>3d}" for x in r) for r in M.signed())


def cmd_check(args) -> int:
    M = ZModMatrix.from_text(_read(args.matrix))
    sign = is_symplectic(M)
    res = six_residuals(M)
    label = {1: "+1", -1: "-1", None: "none"}[sign]
    lines = [label] + [f"({name}) residual {r}" for name, r in zip(EQ_NAMES, res)]
    _emit(args, {"p": M.modulus, "sign": sign, "residuals": dict(zip(EQ_NAMES, res))}, "\n".join(lines))
    return 0


def cmd_decompose(args) -> int:
    M = ZModMatrix.from_text(_read(args.matrix))
    outer = {"auto": None, "inner": False, "outer": True}[args.coset]
    word = decompose(M, outer=outer)
    if args.verify and word.evaluate() != M:
        raise NotInGroup("decomposition failed verification")  # pragma: no cover
    text = word.to_text()
    if args.emit_word:
        _write(args.emit_word, text + "\n")
    _emit(args, {"p": M.modulus, "word": text, "length": word.length(), "verified": bool(args.verify)},
          text or "<identity>")
    return 0


def cmd_lift(args) -> int:
    p = require_prime(args.p)
    src = args.word if args.word is not None else _read(args.word_file)
    word = GeneratorWord.from_text(src, p)
    rep = lift(word, p)
    if args.out:
        _write(args.out, rep.to_text())
    payload = {"p": p, "word": word.to_text(), "outer": rep.outer, "dim": p * p}
    human = f"lifted {word} to a {p * p}x{p * p} matrix (outer {str(rep.outer).lower()})"
    if args.check:
        C = coeff_matrix(rep)
        payload["coeff"] = C.tolist()
        human += "\n" + _fmt_matrix(C)
    _emit(args, payload, human)
    return 0


def cmd_coeff(args) -> int:
    rep = AutomorphismRep.from_text(_read(args.matrix))
    if args.outer:
        rep = AutomorphismRep(rep.matrix, rep.n, True)
    C = coeff_matrix(rep)
    _emit(args, {"p": rep.n, "outer": rep.outer, "coeff": C.tolist(), "sign": is_symplectic(C)}, _fmt_matrix(C))
    return 0


def cmd_enumerate(args) -> int:
    p = require_prime(args.p)
    sign = {"1": 1, "+1": 1, "-1": -1, "both": "both"}[args.sign]
    table = enumerate_by_form(p, sign)
    closure = generator_closure(p)
    expected = order_formula(p) * (2 if sign == "both" else 1)
    if sign == 1:
        agrees = table.codes == closure.codes
    elif sign == -1:
        agrees = table.codes == minus_coset(closure).codes
    else:
        agrees = table.codes == closure.codes and table.outer_codes == minus_coset(closure).codes
    ok = agrees and table.size == expected
    if args.dump:
        _write(args.dump, table.dump())
    _emit(args, {"p": p, "sign": str(sign), "count": table.size, "order_formula": expected,
                 "bfs_agrees": agrees}, f"{table.size}")
    if not ok:
        print(f"mismatch: formula {expected}, BFS agreement {agrees}", file=sys.stderr)
        return 1
    return 0


def named_identities(p: int) -> list[tuple[str, bool]]:
    """Named identity suite: commutation relations, generator images, Out_I, Step 2."""
    require_prime(p)
    P, Q, I = build_P(p), build_Q(p), build_I(p)
    out = [(f"commutation {k}", v) for k, v in commutation_relations(p).items()]
    out.append(("QP = w PQ", Q @ P == (P @ Q).scale(omega(p, 1))))
    B2, B3, B4 = build_B(2, p), build_B(3, p), build_B(4, p)
    out.append(("B2^-1 (Q x I) B2 = P x I", build_B_inverse(2, p) @ Q.tensor(I) @ B2 == P.tensor(I)))
    out.append(("B3^-1 (P x Q) B3 = Q x P", build_B_inverse(3, p) @ P.tensor(Q) @ B3 == Q.tensor(P)))
    out.append(("B4^-1 (I x Q) B4 = Q^-1 x Q",
                build_B_inverse(4, p) @ I.tensor(Q) @ B4 == (Q ** -1).tensor(Q)))
    for j in range(1, 5):
        out.append((f"C(Ad_B{j}) = D{j}", coeff_matrix(ad_B(j, p)) == build_D(j, p)))
    out.append(("C(Out_I) = diag(-1,1,-1,1)", coeff_matrix(out_I(p)) == outer_diag(p)))
    # over F_2, -J = J and the check reports +1
    out.append(("diag(-1,1,-1,1)^T J diag(-1,1,-1,1) = -J",
                outer_diag(p).T @ form_J(p) @ outer_diag(p) == -form_J(p)))
    for k in range(p):
        sk = ZModScalar(k, p)
        out.append((f"J^T (D4^(1-k))^T J D4^T = S(k), k={k}", step2_sk_word(sk).evaluate() == build_S(sk)))
    return out


def cmd_verify_identities(args) -> int:
    p = require_prime(args.p)
    if p > 11:
        raise DomainError(f"verify-paper supports p <= 11, got {p}")
    results = named_identities(p)
    ok = all(v for _, v in results)
    _emit(args, {"p": p, "results": dict(results), "all_pass": ok},
          "\n".join(f"{'PASS' if v else 'FAIL'}  {name}" for name, v in results))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a subcommand's default does not clobber a --json given before it
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    ap = argparse.ArgumentParser(prog="pauli-normalizer", parents=[common],
                                 description="Normalizer of the tensor Pauli grading of sl(p^2, C).")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="sign of X^T J X and the six residuals")
    s.add_argument("matrix", help="4x4 matrix file ('p N' header), '-' for stdin")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("decompose", parents=[common], help="write a matrix as a word in D1..D4")
    s.add_argument("matrix")
    s.add_argument("--emit-word", metavar="FILE", help="also write the word to FILE")
    s.add_argument("--verify", action="store_true", help="re-evaluate the word and compare")
    s.add_argument("--coset", choices=["auto", "inner", "outer"], default="auto",
                   help="force the +J or -J coset (needed only for p = 2)")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("lift", parents=[common], help="lift a word to an explicit automorphism")
    s.add_argument("word_file", nargs="?", default="-")
    s.add_argument("--word", help="word given inline instead of a file")
    s.add_argument("-p", "--p", type=int, required=True)
    s.add_argument("-o", "--out", help="write the automorphism here")
    s.add_argument("--check", action="store_true", help="print the coefficient matrix")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("coeff", parents=[common], help="coefficient matrix of a p^2 x p^2 matrix")
    s.add_argument("matrix")
    s.add_argument("--outer", action="store_true", help="treat as Out_I o Ad_B")
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("enumerate", parents=[common], help="brute-force group enumeration (p = 2, 3)")
    s.add_argument("-p", "--p", type=int, required=True)
    s.add_argument("--sign", default="1", choices=["1", "+1", "-1", "both"])
    s.add_argument("--dump", metavar="FILE")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify-paper", parents=[common], help="run the named identity suite")
    s.add_argument("-p", "--p", type=int, required=True)
    s.set_defaults(func=cmd_verify_identities)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
