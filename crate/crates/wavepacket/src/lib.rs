//! Quantum circuits for frequency-localized wave packet transforms.
//!
//! Four orthonormal transforms are synthesized as explicit gate lists: the
//! sharp and blended Gabor transforms and the Shannon and Meyer wavelet
//! transforms. Each is checked against an independent dense reference built
//! directly from the basis definitions in [`oracle`].
//!
//! Conventions: qubit `i` is bit `i` of a basis index, so qubit `n-1` is the
//! most significant; the Fourier transform carries a plus sign in its
//! exponent; negative frequency indices are taken modulo `N`.

pub mod circuit;
pub mod diag;
pub mod gabor;
pub mod oracle;
pub mod perm;
pub mod qft;
pub mod tensor;
pub mod transform;
pub mod wavelet;
