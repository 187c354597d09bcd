from math import comb


def extended_binomial(m: int, p: int) -> int:
    """binom(m+p, m) = (p+m)(p+m-1)...(p+1)/m!, for any integer p."""
    if m < 0:
        raise ValueError(f"extended_binomial needs m >= 0, got m={m}")
    if p >= 0:
        return comb(p + m, m)
    if p >= -m:
        return 0  # one of the factors p+1..p+m vanishes
    # all factors negative: (-1)^m * binom(-p-1, m)
    return (-1) ** m * comb(-p - 1, m)
