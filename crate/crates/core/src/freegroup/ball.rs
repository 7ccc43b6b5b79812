use super::word::ReducedWord;

/// Letters in enumeration order: `a < A < b < B < ...`.
fn letter_order(rank: u32) -> Vec<i32> {
    (1..=rank as i32).flat_map(|i| [i, -i]).collect()
}

/// All reduced words of length at most `radius`, breadth first: by length,
/// then by extending each shorter word with letters in `a, A, b, B, ...`
/// order.
pub fn ball(rank: u32, radius: usize) -> Vec<ReducedWord> {
    let letters = letter_order(rank);
    let mut out = vec![ReducedWord::identity(rank)];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = out.len();
        for i in frontier.clone() {
            let last = out[i].letters().last().copied();
            for &l in &letters {
                if last == Some(-l) {
                    continue;
                }
                let mut next = out[i].letters().to_vec();
                next.push(l);
                out.push(ReducedWord::from_letters(rank, next).expect("reduced by construction"));
            }
        }
        frontier = start..out.len();
    }
    out
}

/// `1 + sum_{j=1}^{radius} 2r (2r-1)^(j-1)`.
pub fn ball_size(rank: u32, radius: usize) -> u128 {
    let r = u128::from(rank);
    let mut total = 1u128;
    let mut sphere = 2 * r;
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(2 * r - 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Oracle: every spelling over the alphabet up to `radius`, keeping the
    /// reduced ones.
    fn brute_force_ball(rank: u32, radius: usize) -> HashSet<ReducedWord> {
        let letters = letter_order(rank);
        let mut all = HashSet::new();
        let mut spellings: Vec<Vec<i32>> = vec![vec![]];
        for _ in 0..=radius {
            for s in &spellings {
                if let Ok(w) = ReducedWord::from_letters(rank, s.clone()) {
                    all.insert(w);
                }
            }
            spellings = spellings
                .iter()
                .flat_map(|s| letters.iter().map(move |&l| [s.as_slice(), &[l]].concat()))
                .collect();
        }
        all
    }

    #[test]
    fn sizes_and_order() {
        let b = ball(2, 2);
        let names: Vec<String> = b.iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["1", "a", "A", "b", "B", "aa", "ab", "aB", "AA", "Ab", "AB", "ba", "bA", "bb", "Ba", "BA", "BB"]
        );
        assert_eq!(ball(2, 0).len(), 1);
        for radius in 0..7 {
            assert_eq!(ball(2, radius).len() as u128, ball_size(2, radius));
        }
        assert_eq!(ball(3, 3).len() as u128, ball_size(3, 3));
    }

    #[test]
    fn matches_brute_force_enumeration() {
        for (rank, radius) in [(2, 5), (3, 3), (1, 4)] {
            let bfs: HashSet<ReducedWord> = ball(rank, radius).into_iter().collect();
            assert_eq!(bfs, brute_force_ball(rank, radius));
        }
    }
}
