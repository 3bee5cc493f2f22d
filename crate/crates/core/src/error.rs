use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An intermediate integer left the checked 64-bit range.
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    /// The character lattice did not have free rank one.
    #[error("character lattice has free rank {0}, expected 1")]
    Rank(usize),
    /// The stabilizing variable has weight of zero free degree, so powers of
    /// z0 cannot be told apart by degree (the sum of 1/k_i equals 1).
    #[error("z0 has torsion degree (sum of 1/k_i is 1); grading is ambiguous")]
    AmbiguousGrading,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable name used on diagnostic output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Overflow => "Overflow",
            Error::Rank(_) => "RankError",
            Error::AmbiguousGrading => "AmbiguousGrading",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub(crate) trait Checked: Sized {
    fn add_c(self, rhs: Self) -> Result<Self>;
    fn sub_c(self, rhs: Self) -> Result<Self>;
    fn mul_c(self, rhs: Self) -> Result<Self>;
}

impl Checked for i64 {
    #[inline]
    fn add_c(self, rhs: i64) -> Result<i64> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }
    #[inline]
    fn sub_c(self, rhs: i64) -> Result<i64> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }
    #[inline]
    fn mul_c(self, rhs: i64) -> Result<i64> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }
}
