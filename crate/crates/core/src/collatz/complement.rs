use crate::exactnum::{EventuallyPeriodicBits, TwoAdicWord, Q2};

/// The involution `V(x) = -1 - x`, which on binary expansions flips every bit.
pub trait Complement {
    fn complement(&self) -> Self;
}

impl Complement for EventuallyPeriodicBits {
    fn complement(&self) -> Self {
        EventuallyPeriodicBits::complement(self)
    }
}

impl Complement for TwoAdicWord {
    fn complement(&self) -> Self {
        TwoAdicWord::complement(self)
    }
}

impl Complement for Q2 {
    fn complement(&self) -> Self {
        -(self + &Q2::integer(1))
    }
}

pub fn v_complement<T: Complement>(x: &T) -> T {
    x.complement()
}

/// The shift map `σ`, dropping bit 0.
pub fn sigma_shift(b: &EventuallyPeriodicBits) -> EventuallyPeriodicBits {
    b.shift()
}
