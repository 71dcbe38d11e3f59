//! Mixed-radix tuple helpers shared by the table-driven routines.

/// Row-major index of `tuple` in a table over a carrier of size `radix`.
pub fn encode(tuple: &[usize], radix: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * radix + v)
}

/// Inverse of [`encode`] for tuples of length `len`.
pub fn decode(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % radix.max(1);
        index /= radix.max(1);
    }
    out
}

/// Visits every tuple `t` with `t[i] < radices[i]`, in lexicographic order.
/// Stops early and returns `false` as soon as `f` returns `false`.
pub fn for_each_index(radices: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if radices.contains(&0) {
        return true;
    }
    let mut digits = vec![0usize; radices.len()];
    loop {
        if !f(&digits) {
            return false;
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Visits every tuple of length `arity` over `0..=new` that mentions `new`
/// at least once. Each such tuple is visited exactly once.
pub fn for_each_tuple_containing(new: usize, arity: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut buf = vec![0usize; arity];
    for first in 0..arity {
        // positions before `first` avoid `new`, so `first` is its first occurrence
        let radices: Vec<usize> = (0..arity)
            .map(|i| match i.cmp(&first) {
                std::cmp::Ordering::Less => new,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => new + 1,
            })
            .collect();
        let keep_going = for_each_index(&radices, |digits| {
            for (i, d) in digits.iter().enumerate() {
                buf[i] = if i == first { new } else { *d };
            }
            f(&buf)
        });
        if !keep_going {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_inverse() {
        for i in 0..27 {
            assert_eq!(encode(&decode(i, 3, 3), 3), i);
        }
        assert_eq!(decode(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(encode(&[], 4), 0);
    }

    #[test]
    fn index_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_index(&[2, 3], |t| {
            seen.push(t.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[3], vec![1, 0]);

        let mut count = 0;
        for_each_index(&[], |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
        for_each_index(&[2, 0], |_| panic!("no tuples expected"));
    }

    #[test]
    fn containing_tuples_partition_new_ones() {
        for arity in 0..4 {
            for new in 0..4 {
                let mut seen = Vec::new();
                for_each_tuple_containing(new, arity, |t| {
                    seen.push(t.to_vec());
                    true
                });
                let mut expected = Vec::new();
                for_each_index(&vec![new + 1; arity], |t| {
                    if t.contains(&new) {
                        expected.push(t.to_vec());
                    }
                    true
                });
                seen.sort();
                assert_eq!(seen, expected, "arity {arity} new {new}");
            }
        }
    }
}
