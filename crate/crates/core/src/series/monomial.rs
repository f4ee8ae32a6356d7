use std::cmp::Ordering;

/// Exponents of the even generators and the set of odd generators as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub even: Vec<u16>,
    pub odd: u64,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial { even: vec![0; n_even], odd: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().map(|&e| e as u32).sum::<u32>() + self.odd.count_ones()
    }

    /// Product with the sign from reordering odd generators; `None` if an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, i64)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut b = other.odd;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.odd >> j >> 1).count_ones();
            b &= b - 1;
        }
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        Some((Monomial { even, odd: self.odd | other.odd }, if swaps % 2 == 0 { 1 } else { -1 }))
    }
}

/// Graded order: total degree, then larger leading even exponents first, then odd sets.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.even.cmp(&self.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
