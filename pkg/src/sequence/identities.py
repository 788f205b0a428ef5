"""Closed-form identities and growth bounds of k-generalized Lucas numbers."""

from src.errors import DomainError
from src.models.schemas import IdentityReport
from src.sequence.window import _as_params, stream


def check_identities(params, n_hi: int) -> IdentityReport:
    """
    Check L_n = 3*2^(n-2) for 2 <= n <= k, L_{k+1} = 3*2^(k-1) - 2 and
    L_n < 3*2^(n-2) for k+1 <= n <= n_hi.

    Args:
        params: KParams or the integer k
        n_hi: Last index checked, at least k + 1

    Returns:
        IdentityReport with the first counterexample if any
    """
    params = _as_params(params)
    k = params.k
    if n_hi < k + 1:
        raise DomainError(f"n_hi must be at least k + 1 = {k + 1}, got {n_hi}")

    checked = 0
    for n, value in stream(params, 2, n_hi):
        closed = 3 << (n - 2)
        if n <= k:
            ok, relation = value == closed, f"L_{n} = 3*2^{n - 2}"
        elif n == k + 1:
            ok, relation = value == closed - 2, f"L_{n} = 3*2^{k - 1} - 2"
        else:
            ok, relation = value < closed, f"L_{n} < 3*2^{n - 2}"
        checked += 1
        if not ok:
            return IdentityReport(
                k=k,
                n_hi=n_hi,
                passed=False,
                checked=checked,
                counterexample_n=n,
                counterexample=f"{relation} fails: L_{n} = {value}",
            )
    return IdentityReport(k=k, n_hi=n_hi, passed=True, checked=checked)
