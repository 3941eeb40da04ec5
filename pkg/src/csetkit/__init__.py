"""Computing with finite categories and their C-sets."""

from .fincat import Category, Walk, delooping, is_connected, is_groupoid, opposite, product_category, subcategory
from .cset import (
    CSet,
    Elem,
    NatTrans,
    SubCSet,
    are_isomorphic,
    decompose,
    disjoint_union,
    enumerate_subfunctors,
    generated_subset,
    is_indecomposable,
    is_simple,
    pointwise_product,
    restrict,
    walk_orbit,
)

__version__ = "0.1.0"

__all__ = [
    "Category", "Walk", "delooping", "is_connected", "is_groupoid", "opposite", "product_category",
    "subcategory", "CSet", "Elem", "NatTrans", "SubCSet", "are_isomorphic", "decompose",
    "disjoint_union", "enumerate_subfunctors", "generated_subset", "is_indecomposable", "is_simple",
    "pointwise_product", "restrict", "walk_orbit",
]
