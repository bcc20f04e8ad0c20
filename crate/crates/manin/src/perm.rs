//! Permutations of `{1, 2, 3}`.

use std::fmt;

/// A permutation of `{1, 2, 3}`, stored as the images of 1, 2, 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub fn identity() -> Self {
        Perm3([1, 2, 3])
    }

    /// Builds a permutation from the images of 1, 2, 3.
    pub fn from_images(images: [usize; 3]) -> Self {
        let mut seen = [false; 3];
        for &i in &images {
            assert!((1..=3).contains(&i), "image out of range");
            assert!(!seen[i - 1], "not a bijection");
            seen[i - 1] = true;
        }
        Perm3(images)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        assert!(a != b && (1..=3).contains(&a) && (1..=3).contains(&b));
        let mut images = [1, 2, 3];
        images.swap(a - 1, b - 1);
        Perm3(images)
    }

    /// The 3-cycle sending 1 to 2, 2 to 3 and 3 to 1.
    pub fn cycle() -> Self {
        Perm3([2, 3, 1])
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Perm3) -> Perm3 {
        Perm3([
            self.apply(other.apply(1)),
            self.apply(other.apply(2)),
            self.apply(other.apply(3)),
        ])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut images = [0; 3];
        for i in 1..=3 {
            images[self.apply(i) - 1] = i;
        }
        Perm3(images)
    }

    pub fn sign(&self) -> i64 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// All six permutations, in a fixed order.
    pub fn all() -> [Perm3; 6] {
        [
            Perm3([1, 2, 3]),
            Perm3([2, 1, 3]),
            Perm3([3, 2, 1]),
            Perm3([1, 3, 2]),
            Perm3([2, 3, 1]),
            Perm3([3, 1, 2]),
        ]
    }
}

impl fmt::Debug for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0], self.0[1], self.0[2])
    }
}
