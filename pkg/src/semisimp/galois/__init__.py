from .descent import BudgetExceeded, DescentFailure, first_split_prime
from .field import NumberFieldDesc, irreducibility_screen
from .table import (
    Automorphism,
    AutomorphismTable,
    FrobeniusResult,
    FrobeniusUndefined,
    GaloisError,
    automorphisms,
    conj_class_of,
    frobenius,
)
