"""Dimension counts for joins of projective varieties"""
from src.algebra.errors import InvalidInputError


def join_dim_bound(dim_w: int, dim_x: int) -> int:
    """
    Upper bound for the dimension of the join of two varieties

    Args:
        dim_w: Dimension of the first variety
        dim_x: Dimension of the second variety

    Returns:
        dim_w + dim_x + 1
    """
    if dim_w < 0 or dim_x < 0:
        raise InvalidInputError(f"Dimensions must be non-negative, got ({dim_w}, {dim_x})")
    return dim_w + dim_x + 1
