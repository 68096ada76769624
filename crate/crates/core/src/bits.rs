//! Flat `u64` bitset helpers shared by the solver and the set-family
//! constructions.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub fn set(bits: &mut [u64], i: usize) {
    bits[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(bits: &mut [u64], i: usize) {
    bits[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub fn test(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_zero(bits: &[u64]) -> bool {
    bits.iter().all(|&w| w == 0)
}

pub fn first(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

pub fn iter_ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            }
        })
    })
}

/// Bits `0..n` set.
pub fn full(n: usize) -> Vec<u64> {
    let mut v = vec![0u64; words_for(n)];
    for (i, w) in v.iter_mut().enumerate() {
        let lo = i * 64;
        if n >= lo + 64 {
            *w = u64::MAX;
        } else if n > lo {
            *w = (1u64 << (n - lo)) - 1;
        }
    }
    v
}

/// Iterates the members of a `u64` mask in increasing order.
pub fn mask_ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        }
    })
}

/// All submasks of `m`, in increasing numeric order.
pub fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some(((cur | !m).wrapping_add(1)) & m) };
        Some(cur)
    })
}

/// `{a,b,c}` rendering of a vertex mask.
pub fn mask_label(m: u64) -> String {
    let parts: Vec<String> = mask_ones(m).map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_enumerates_all_in_order() {
        let subs: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(submasks(0xff).count(), 256);
    }

    #[test]
    fn full_and_iter() {
        let f = full(70);
        assert_eq!(count(&f), 70);
        assert_eq!(iter_ones(&f).last(), Some(69));
        assert_eq!(first(&[0, 4]), Some(66));
        assert_eq!(full(0), vec![0]);
    }
}
