"""Exact arithmetic and enumeration checks for sums of two squares in F_q[T]."""

from .field import (
    DivisionByZero, EvenCharacteristic, Field, FieldElement, FieldError, FieldMismatch,
    NonPrime, ReducibleModulus, enumerate_field, field_arith, field_new, parse_field, trace,
)
from .polyring import (
    FqPoly, coefficient, enumerate_monic, in_interval, interval, monic_from_index,
    monic_index, parse_poly, poly_arith,
)
from .hankel import (
    HankelMatrix, InvalidPartition, LengthMismatch, OutOfRange, ReducedForm, RhoPiPartition,
    TriangularBlock, all_partitions, count_hankel_with_reduced, count_reduced_with_partition,
    enumerate_hankel, enumerate_reduced, hankel_from_seq, partition, rank, reduce,
    reduce_with_certificate, stage1_reduce, strict_rho_pi, submatrix,
)
from .multiset import (
    MultisetFq, ms_named, ms_nfold, ms_sumset, ms_union, values_closed_hankel,
    values_closed_triangular, values_quadform,
)
from .charsum import (
    CensusCell, CharSumValue, census_N, char_of_multiset, charsum_mul,
    interval_square_sum_via_characters, pair_contribution,
)
from .variance import (
    BadDegree, GammaZero, ScaledRational, STable, build_s_table, mean_brute, mean_closed,
    s_gamma_m, square_sum_brute, variance_brute, variance_closed,
)

__version__ = "0.1.0"
