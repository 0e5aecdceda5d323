from .learn import build_fib_sturmian_dfao, build_floor_phi_synchronizer
from .machines import (
    Dfa,
    Dfao,
    distinguishing_word,
    dumps,
    forbidden_factor_dfa,
    loads,
    minimize,
    product,
    run,
)
