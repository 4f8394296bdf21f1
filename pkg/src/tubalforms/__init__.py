"""Tubal (t-product) algebra of complex hypermatrices and t-Hermitian forms."""
from .core import (
    DimensionError,
    SingularityError,
    conj_elementwise,
    fft_tubal,
    frobenius_inner,
    frontal_slice,
    ifft_tubal,
    tube,
    tubal_dims,
)
from .einstein import (
    einstein_product,
    gen_t_conj_transpose,
    phi,
    phi_inv,
    t_einstein,
    t_einstein_naive,
    t_identity_k,
    t_power_integer,
)
from .hermitian import (
    eval_hermitian_form,
    is_hermitian_tensor,
    is_hpsym_matrix,
    is_partially_symmetric,
    multilinear_matmul,
    outer_product,
    p_sym,
    perm_matrix,
    psym,
)
from .matricization import (
    bcirc,
    cubically_balanced,
    dematricize,
    fold3,
    hvec,
    hvec_inv,
    matricize,
    psi,
    psi_inv,
    tensor_svd,
    unfold3,
)
from .spectral import (
    NotHPDError,
    NotJointMTUError,
    NumericalDegeneracyError,
    algorithm3_positivity,
    check_joint_mtu,
    joint_eigendecompose,
    spectral_form_eval,
    spectral_power,
    spectral_reconstruct,
    t_matrix_tensor_eigenvalues,
)
from .tforms import (
    eval_t_hermitian_form,
    is_t_hps,
    psi_lift,
    t_hpd_sample_test,
    t_multilinear_product,
    theta_decompose,
    tubal_eval,
)
from .tprod import (
    fourier_conjugation,
    is_t_hermitian,
    phi_k1,
    t_conj_transpose,
    t_det,
    t_identity,
    t_inverse,
    tprod,
    tprod_fft,
    tprod_naive,
)

__version__ = "0.1.0"
