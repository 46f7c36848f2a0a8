//! Exact ternary digit extraction for IEEE doubles.
//!
//! A positive double x in (0, 1) is the exact dyadic rational m / 2^s after
//! stripping trailing zero bits from the significand. Ternary digits of that
//! rational are produced one at a time from the integer state
//! `num = (x * 3^i) mod 1` held as `num / 2^s`, so every digit is exact: no
//! repeated multiply-by-3 rounding is involved. For x >= 2^-73 the reduced
//! shift satisfies s <= 126 and `3 * num` fits in a u128; smaller inputs have
//! all-zero digits through every stage this crate scans (3^-46 > 2^-73) and
//! are handled by the caller.

/// Digit stream for a double in (0, 1). Invariant: `num < 2^shift`, `shift <= 126`.
pub(crate) struct DigitScan {
    num: u128,
    shift: u32,
}

impl DigitScan {
    /// `None` when x < 2^-73; such inputs scan as all zeros to depth 46.
    pub(crate) fn new(x: f64) -> Option<DigitScan> {
        debug_assert!(x > 0.0 && x < 1.0, "DigitScan expects x in (0, 1), got {x}");
        let bits = x.to_bits();
        let exp_field = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut m, mut e) = if exp_field == 0 {
            (frac, -1074i32)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        let tz = m.trailing_zeros();
        m >>= tz;
        e += tz as i32;
        debug_assert!(e < 0);
        let shift = (-e) as u32;
        if shift > 126 {
            return None;
        }
        Some(DigitScan {
            num: m as u128,
            shift,
        })
    }

    /// Next ternary digit (in {0, 1, 2}).
    pub(crate) fn next_digit(&mut self) -> u8 {
        self.num *= 3;
        let d = (self.num >> self.shift) as u8;
        self.num -= (d as u128) << self.shift;
        d
    }

    /// True when the remaining tail is exactly zero, i.e. the digits read so
    /// far terminate the expansion.
    pub(crate) fn exhausted(&self) -> bool {
        self.num == 0
    }

    /// Remaining tail as a fraction of the current ternary place, in [0, 1).
    /// Clamped strictly below 1: a tail that rounds up to a full place would
    /// otherwise report an impossible local coordinate.
    pub(crate) fn fraction(&self) -> f64 {
        let raw = if self.shift <= 63 {
            self.num as f64 / (1u64 << self.shift) as f64
        } else {
            // Split the shift so neither factor overflows the f64 exponent range.
            (self.num >> 63) as f64 / (1u64 << (self.shift - 63)) as f64
                + (self.num as u64 & u64::MAX >> 1) as f64
                    / ((1u64 << 63) as f64 * (1u64 << (self.shift - 63)) as f64)
        };
        raw.min(1.0 - f64::EPSILON / 2.0)
    }
}

/// Digit source covering the whole closed interval [0, 1]: the endpoints and
/// sub-2^-73 inputs become constant streams.
pub(crate) enum TernaryStream {
    Constant(u8),
    Scan(DigitScan),
}

impl TernaryStream {
    /// Caller guarantees 0 <= x <= 1.
    pub(crate) fn new(x: f64) -> TernaryStream {
        debug_assert!((0.0..=1.0).contains(&x));
        if x <= 0.0 {
            TernaryStream::Constant(0)
        } else if x >= 1.0 {
            // 1 = 0.222... in ternary; the constant-2 stream makes every
            // digit-scan consumer treat 1 as the right endpoint of [0, 1].
            TernaryStream::Constant(2)
        } else {
            match DigitScan::new(x) {
                Some(scan) => TernaryStream::Scan(scan),
                None => TernaryStream::Constant(0),
            }
        }
    }

    pub(crate) fn next_digit(&mut self) -> u8 {
        match self {
            TernaryStream::Constant(d) => *d,
            TernaryStream::Scan(scan) => scan.next_digit(),
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        match self {
            TernaryStream::Constant(0) => true,
            TernaryStream::Constant(_) => false,
            TernaryStream::Scan(scan) => scan.exhausted(),
        }
    }

    pub(crate) fn fraction(&self) -> f64 {
        match self {
            TernaryStream::Constant(0) => 0.0,
            TernaryStream::Constant(_) => 1.0,
            TernaryStream::Scan(scan) => scan.fraction(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits_of(x: f64, n: usize) -> Vec<u8> {
        let mut s = TernaryStream::new(x);
        (0..n).map(|_| s.next_digit()).collect()
    }

    #[test]
    fn half_is_all_ones() {
        // 1/2 = 0.111..._3
        assert_eq!(digits_of(0.5, 6), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn quarter_alternates() {
        // 1/4 = 0.020202..._3
        assert_eq!(digits_of(0.25, 8), vec![0, 2, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn dyadic_terminates_in_binary_not_ternary() {
        // 3/4 = 0.202020..._3
        assert_eq!(digits_of(0.75, 6), vec![2, 0, 2, 0, 2, 0]);
        let mut s = TernaryStream::new(0.75);
        for _ in 0..6 {
            s.next_digit();
        }
        assert!(!s.exhausted());
    }

    #[test]
    fn exact_reconstruction() {
        // Digits reconstruct x exactly for a dyadic with a short expansion.
        let x = 0.6875; // 11/16
        let mut s = TernaryStream::new(x);
        let mut acc = 0.0;
        let mut w = 1.0;
        for _ in 0..80 {
            w /= 3.0;
            acc += s.next_digit() as f64 * w;
        }
        assert!((acc - x).abs() < 1e-15, "acc = {acc}");
    }

    #[test]
    fn tiny_values_scan_as_zero() {
        assert_eq!(digits_of(1e-300, 5), vec![0, 0, 0, 0, 0]);
        assert_eq!(digits_of(0.0, 3), vec![0, 0, 0]);
    }

    #[test]
    fn one_scans_as_twos() {
        assert_eq!(digits_of(1.0, 4), vec![2, 2, 2, 2]);
    }

    #[test]
    fn fraction_tracks_tail() {
        // After one digit of 0.5, the tail is again 0.5.
        let mut s = TernaryStream::new(0.5);
        assert_eq!(s.next_digit(), 1);
        assert!((s.fraction() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn subnormal_tail_fraction_is_finite() {
        let x = 2.5e-16; // shift well above 63 after reduction
        let mut s = TernaryStream::new(x);
        for _ in 0..40 {
            s.next_digit();
        }
        let f = s.fraction();
        assert!((0.0..1.0).contains(&f));
    }
}
