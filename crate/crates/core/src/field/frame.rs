use serde::{Deserialize, Serialize};

use super::ParamMonomial;

/// A named set of five free variables. Some frames also carry one variable
/// eliminated by a product constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// `b, c, d, e, f`; `c..f` are interchangeable.
    Bcdef,
    /// `a1..a4` and `t`, where `t` stands for `e^{i theta}`.
    Aw,
    /// `a, b, c, d, e` with `f = q^{1-n} a b c / (d e)`.
    Converse,
    /// `x1..x5` with `x6 = q^{1-n} / (x1 x2 x3 x4 x5)`.
    X6,
}

impl Frame {
    pub const ALL: [Frame; 4] = [Frame::Bcdef, Frame::Aw, Frame::Converse, Frame::X6];

    pub const fn vars(self) -> [&'static str; 5] {
        match self {
            Frame::Bcdef => ["b", "c", "d", "e", "f"],
            Frame::Aw => ["a1", "a2", "a3", "a4", "t"],
            Frame::Converse => ["a", "b", "c", "d", "e"],
            Frame::X6 => ["x1", "x2", "x3", "x4", "x5"],
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Frame::Bcdef => "bcdef",
            Frame::Aw => "aw",
            Frame::Converse => "converse",
            Frame::X6 => "x6",
        }
    }

    pub fn from_name(s: &str) -> Option<Frame> {
        Frame::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn var_index(self, name: &str) -> Option<usize> {
        self.vars().iter().position(|v| *v == name)
    }

    /// The eliminated variable and its value as a monomial in the free ones.
    pub fn derived(self) -> Option<(&'static str, ParamMonomial)> {
        match self {
            Frame::Converse => Some(("f", ParamMonomial::new(1, 1, -1, [1, 1, 1, -1, -1]))),
            Frame::X6 => Some(("x6", ParamMonomial::new(1, 1, -1, [-1; 5]))),
            _ => None,
        }
    }

    /// Substitutions generating the frame's symmetric relabelings. Each entry
    /// gives the image of every free variable.
    pub fn relabelings(self) -> Vec<[ParamMonomial; 5]> {
        let v = ParamMonomial::var;
        match self {
            Frame::Bcdef => permutations(4)
                .into_iter()
                .map(|p| [v(0), v(1 + p[0]), v(1 + p[1]), v(1 + p[2]), v(1 + p[3])])
                .collect(),
            Frame::Aw => permutations(4)
                .into_iter()
                .map(|p| [v(p[0]), v(p[1]), v(p[2]), v(p[3]), v(4)])
                .collect(),
            Frame::Converse => {
                let f = self.derived().unwrap().1;
                let lower = [v(3), v(4), f];
                let mut out = Vec::with_capacity(36);
                for pu in permutations(3) {
                    for pl in permutations(3) {
                        // the image of f is forced by the constraint
                        out.push([v(pu[0]), v(pu[1]), v(pu[2]), lower[pl[0]], lower[pl[1]]]);
                    }
                }
                out
            }
            Frame::X6 => {
                let x6 = self.derived().unwrap().1;
                let all = [v(0), v(1), v(2), v(3), v(4), x6];
                permutations(6)
                    .into_iter()
                    .map(|p| [all[p[0]], all[p[1]], all[p[2]], all[p[3]], all[p[4]]])
                    .collect()
            }
        }
    }
}

impl std::fmt::Display for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(6).len(), 720);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn relabeling_group_sizes() {
        assert_eq!(Frame::Bcdef.relabelings().len(), 24);
        assert_eq!(Frame::Aw.relabelings().len(), 24);
        assert_eq!(Frame::Converse.relabelings().len(), 36);
        assert_eq!(Frame::X6.relabelings().len(), 720);
    }

    #[test]
    fn converse_relabelings_preserve_the_constraint() {
        let (_, f) = Frame::Converse.derived().unwrap();
        for sub in Frame::Converse.relabelings() {
            let image_f = f.substitute(&sub);
            let lowers = sub[3] * sub[4] * image_f;
            assert_eq!(lowers, ParamMonomial::var(3) * ParamMonomial::var(4) * f);
        }
    }

    #[test]
    fn names_round_trip() {
        for f in Frame::ALL {
            assert_eq!(Frame::from_name(f.name()), Some(f));
        }
        assert_eq!(Frame::Aw.var_index("t"), Some(4));
        assert_eq!(Frame::Aw.var_index("q"), None);
    }
}
