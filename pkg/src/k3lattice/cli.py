"""Command-line surface: every computation behind one binary with JSON in
and JSON out.

Exit codes: 0 success, 2 malformed input or flags, 3 domain violation,
4 inconsistent data.  All integers in payloads are decimal strings so that
arbitrary-precision values survive JSON.  Output is byte-identical for
identical input; volatile metadata only appears under --meta, outside the
data object.
"""

import argparse
import datetime
import json
import os
import sys
import warnings
from fractions import Fraction

from . import __version__
from .bb_form import degree_to_bb, recover_form, symmetrized_power
from .disc_form import disc_local_part, discriminant_group
from .enumeration import vectors_of_norm
from .errors import (CapacityError, DegenerateLatticeError, DomainError,
                     InconsistencyError, InvalidGramError, StructureError)
from .lattice_core import QuadLattice, signature
from .local_arith import (artin_invariant, jordan_decomposition,
                          pointed_equivalent_at_p, pointed_invariants)
from .moduli_arith import (MukaiVector, is_supersingular_newton,
                           mukai_lattice, mukai_pairing,
                           mukai_perp_disc_check, newton_polygon)
from .prime_density import (empirical_density, fermat_cubic_supersingular,
                            is_inert, is_prime, union_inert_density)


def _int(x):
    if isinstance(x, bool):
        raise InvalidGramError("expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    raise InvalidGramError(f"expected an integer or decimal string: {x!r}")


def _frac(x):
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise InvalidGramError(f"expected a rational string: {x!r}")


def _s(x):
    """Serialize exact values: ints and Fractions become decimal strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator > 1 else str(x.numerator)
    if isinstance(x, (list, tuple)):
        return [_s(v) for v in x]
    if isinstance(x, dict):
        return {k: _s(v) for k, v in x.items()}
    return x


def _load_gram(obj):
    if not isinstance(obj, list) or not obj:
        raise InvalidGramError("gram must be a non-empty 2-D array")
    rows = []
    for row in obj:
        if not isinstance(row, list):
            raise InvalidGramError("gram must be a 2-D array")
        rows.append([_int(x) for x in row])
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidGramError("gram must be square")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise InvalidGramError("gram must be symmetric")
    return rows


def _load_doc(payload):
    if not isinstance(payload, dict) or "gram" not in payload:
        raise InvalidGramError("document must contain a 'gram' field")
    gram = _load_gram(payload["gram"])
    provenance = payload.get("provenance")
    if provenance is not None:
        provenance = tuple(str(t) for t in provenance)
    return QuadLattice(gram, summands=provenance)


def _read_payload():
    text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidGramError(f"malformed JSON: {e}")


def _form_to_json(form):
    return {
        "invariant_factors": _s(list(form.invariant_factors)),
        "q_values": _s(list(form.q_values)),
    }


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def cmd_disc(args):
    lat = _load_doc(_read_payload())
    form = discriminant_group(lat)
    local = {str(ell): _form_to_json(disc_local_part(form, ell))
             for ell in _prime_factors(form.order)}
    out = _form_to_json(form)
    out["order"] = _s(form.order)
    out["local_parts"] = local
    return out


def cmd_bb_recover(args):
    payload = _read_payload()
    if "degree" in payload:
        n = _int(payload["n"])
        res = degree_to_bb(_int(payload["degree"]), n)
        return {
            "root": _s(res.root),
            "is_integral": res.is_integral,
            "interval": _s(list(res.interval)),
        }
    n = _int(payload["n"])
    xi = [_frac(x) for x in payload["xi"]]
    if "q" in payload:
        q = [[_frac(x) for x in row] for row in payload["q"]]
        if len(q) != len(xi) or any(len(r) != len(q) for r in q):
            raise InvalidGramError("q must be square and match xi")
        xi_norm = sum(xi[i] * q[i][j] * xi[j]
                      for i in range(len(q)) for j in range(len(q)))

        def w(vecs):
            return symmetrized_power(q, n, vecs)
    elif "w_basis_values" in payload:
        values = {tuple(int(t) for t in key.split(",")): _frac(val)
                  for key, val in payload["w_basis_values"].items()}
        r = len(xi)
        xi_norm = _frac(payload["xi_norm"])

        def w(vecs):
            total = Fraction(0)
            from itertools import product
            for combo in product(range(r), repeat=len(vecs)):
                coef = Fraction(1)
                for v, i in zip(vecs, combo):
                    coef *= v[i]
                    if coef == 0:
                        break
                if coef == 0:
                    continue
                key = tuple(sorted(combo))
                if key not in values:
                    raise InvalidGramError(
                        f"missing sample for basis multiset {key}")
                total += coef * values[key]
            return total
    else:
        raise InvalidGramError("payload needs 'degree', 'q' or "
                               "'w_basis_values'")
    basis = [[Fraction(int(i == j)) for j in range(len(xi))]
             for i in range(len(xi))]
    rec = recover_form(w, n, xi, xi_norm, basis)
    return {"q": [_s(list(row)) for row in rec]}


def cmd_density(args):
    if args.bound < 100:
        raise InvalidGramError("--bound must be at least 100")
    chosen = [x is not None and x is not False
              for x in (args.fermat, args.inert, args.union)]
    if sum(chosen) != 1:
        raise InvalidGramError(
            "exactly one of --fermat / --inert / --union is required")
    if args.fermat:
        predicate = lambda p: p != 3 and fermat_cubic_supersingular(p)
        theoretical = Fraction(1, 2)
        label = "fermat-cubic-supersingular"
    elif args.inert is not None:
        ds = [int(x) for x in args.inert.split(",")]
        predicate = lambda p: any(is_inert(p, d) for d in ds)
        theoretical = None
        label = f"inert-in-any:{','.join(map(str, ds))}"
    else:
        ps = [int(x) for x in args.union.split(",")]
        for q in ps:
            if not is_prime(q):
                raise InvalidGramError(f"--union entries must be prime: {q}")
        predicate = lambda p: any(is_inert(p, q) for q in ps)
        theoretical = union_inert_density(ps)
        label = f"union-inert:{','.join(map(str, ps))}"
    rep = empirical_density(predicate, args.bound, theoretical)
    return {
        "predicate": label,
        "bound": _s(rep.bound),
        "total_primes": _s(rep.total_primes),
        "hits": _s(rep.hits),
        "empirical_density": _s(rep.empirical_density),
        "theoretical_density": _s(rep.theoretical_density),
    }


def cmd_newton(args):
    payload = _read_payload()
    coeffs = [_int(c) for c in payload["coeffs"]]
    p = _int(payload["p"])
    polygon = newton_polygon(coeffs, p)
    out = {
        "p": _s(p),
        "slopes": [[_s(s), _s(m)] for s, m in polygon.slopes],
    }
    if "weight" in payload:
        out["supersingular"] = is_supersingular_newton(
            polygon, _int(payload["weight"]))
    return out


def cmd_artin(args):
    payload = _read_payload()
    lat = _load_doc(payload)
    p = _int(payload["p"])
    res = artin_invariant(lat, p)
    return {
        "p": _s(p),
        "sigma": _s(res.sigma),
        "superspecial": res.superspecial,
        "unscaled_basis": [_s(list(v)) for v in res.unscaled_basis],
        "scaled_basis": [_s(list(v)) for v in res.scaled_basis],
    }


def cmd_mukai(args):
    payload = _read_payload()
    ns = _load_doc({"gram": payload["ns"]} if isinstance(payload["ns"], list)
                   else payload["ns"])

    def load_vec(obj):
        return MukaiVector(r=_int(obj["r"]),
                           c1=[_int(x) for x in obj["c1"]],
                           s=_int(obj["s"]))

    v = load_vec(payload["v"])
    big = mukai_lattice(ns)
    out = {
        "lattice_rank": _s(big.rank),
        "lattice_det": _s(big.det),
        "v_square": _s(mukai_pairing(v, v, ns)),
    }
    if "w" in payload:
        out["pairing"] = _s(mukai_pairing(v, load_vec(payload["w"]), ns))
    if "p" in payload:
        rep = mukai_perp_disc_check(v, ns, _int(payload["p"]))
        out["disc_check"] = {
            "p": _s(rep.prime),
            "perp_rank": _s(rep.perp_rank),
            "perp_det": _s(rep.perp_det),
            "ns_det": _s(rep.ns_det),
            "perp_p_exponent": _s(rep.perp_p_exponent),
            "ns_p_exponent": _s(rep.ns_p_exponent),
            "orders_match": rep.orders_match,
            "bound_p20_ok": rep.bound_p20_ok,
        }
    return out


def cmd_jordan(args):
    payload = _read_payload()
    lat = _load_doc(payload)
    p = _int(payload["p"])
    precision = _int(payload["precision"]) if "precision" in payload else None
    dec = jordan_decomposition(lat, p, precision)
    return {
        "p": _s(p),
        "blocks": [{"scale": _s(k), "rank": _s(r), "det_class": _s(c)}
                   for k, r, c in dec.blocks],
    }


def cmd_enumerate(args):
    payload = _read_payload()
    lat = _load_doc(payload)
    norm = _int(payload["norm"])
    bound = _int(payload.get("coeff_bound", 10 ** 6))
    vs = vectors_of_norm(lat, norm, bound)
    return {
        "norm": _s(norm),
        "count": _s(len(vs)),
        "vectors": [_s(list(v)) for v in vs.vectors],
    }


def cmd_pointed(args):
    payload = _read_payload()
    lat = _load_doc(payload)
    point = [_int(x) for x in payload["point"]]
    captured = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inv = pointed_invariants(lat, point)
        out = {
            "signature": _s(list(inv.signature)),
            "point_norm": _s(inv.point_norm),
            "complement_det": _s(inv.complement_det),
            "odd_local": {
                str(p): [{"scale": _s(k), "rank": _s(r), "det_class": _s(c)}
                         for k, r, c in dec.blocks]
                for p, dec in inv.odd_local
            },
            "two_part": _form_to_json(inv.two_part),
        }
        if "point2" in payload:
            point2 = [_int(x) for x in payload["point2"]]
            out["equal_invariants"] = inv == pointed_invariants(lat, point2)
            if "p" in payload:
                out["equivalent_at_p"] = pointed_equivalent_at_p(
                    lat, point, point2, _int(payload["p"]))
        captured = [str(w.message) for w in caught]
    if captured:
        out["warnings"] = sorted(set(captured))
    return out


def _thread_cap():
    raw = os.environ.get("K3LATTICE_THREADS")
    if raw is None:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="k3lattice",
        description="Exact quadratic-lattice arithmetic with JSON")
    parser.add_argument("--meta", action="store_true",
                        help="wrap output with volatile metadata")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, txt in [
        ("disc", cmd_disc, "discriminant group of a Gram document"),
        ("bb-recover", cmd_bb_recover,
         "recover a base form from its symmetrized power (or degree mode)"),
        ("newton", cmd_newton, "Newton polygon of an integer polynomial"),
        ("artin", cmd_artin, "Artin invariant of a Tate-type lattice"),
        ("mukai", cmd_mukai, "Mukai lattice pairing and disc comparison"),
        ("jordan", cmd_jordan, "odd-p Jordan decomposition"),
        ("enumerate", cmd_enumerate, "vectors of one norm (definite)"),
        ("pointed", cmd_pointed, "pointed-lattice invariants"),
    ]:
        p = sub.add_parser(name, help=txt)
        p.set_defaults(func=func)

    d = sub.add_parser("density", help="prime splitting densities")
    d.add_argument("--fermat", action="store_true",
                   help="supersingular reduction of the Fermat cubic")
    d.add_argument("--inert", metavar="D1,D2,...",
                   help="inert in any of Q(sqrt(-D_i))")
    d.add_argument("--union", metavar="P1,P2,...",
                   help="inert in any of Q(sqrt(-p_i)), distinct primes")
    d.add_argument("--bound", type=int, required=True,
                   help="sieve bound (>= 100)")
    d.set_defaults(func=cmd_density)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _thread_cap()  # accepted for compatibility; computations are sequential
    try:
        data = args.func(args)
    except InconsistencyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (DegenerateLatticeError, DomainError, StructureError,
            CapacityError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (InvalidGramError, KeyError, TypeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.meta:
        payload = {
            "data": data,
            "meta": {
                "tool": "k3lattice",
                "version": __version__,
                "generated_at":
                    datetime.datetime.now(datetime.timezone.utc).isoformat(),
            },
        }
    else:
        payload = data
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
