//! Row-reduced echelon systems over GF(p), small dimension.

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat: a^(p-2)
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    let mut acc = 1u64;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// Homogeneous linear system kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Echelon {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns true if the rank grew.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        let p = self.p;
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = row[pc];
            if c != 0 {
                for k in 0..self.dim {
                    row[k] = (row[k] + (p - c) * r[k]) % p;
                }
            }
        }
        let Some(pc) = row.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = inv_mod(row[pc], p);
        for c in row.iter_mut() {
            *c = *c * inv % p;
        }
        for r in self.rows.iter_mut() {
            let c = r[pc];
            if c != 0 {
                for k in 0..self.dim {
                    r[k] = (r[k] + (p - c) * row[k]) % p;
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(pc);
        true
    }

    /// Basis of the solution space `{x : row·x = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.dim];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        (0..self.dim)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![0u32; self.dim];
                x[f] = 1;
                for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = (p - r[f]) % p;
                }
                x
            })
            .collect()
    }
}

/// Scales `v` so its first nonzero coordinate is 1. Returns false for the zero vector.
pub(crate) fn normalize(v: &mut [u32], p: u32) -> bool {
    let Some(&lead) = v.iter().find(|&&c| c != 0) else {
        return false;
    };
    let inv = inv_mod(lead, p);
    for c in v.iter_mut() {
        *c = *c * inv % p;
    }
    true
}

/// Every projective point of the span of `basis`, each once, normalized.
pub(crate) fn projective_points(basis: &[Vec<u32>], p: u32, dim: usize) -> Vec<Vec<u32>> {
    let d = basis.len();
    let mut out = Vec::new();
    // coefficient vectors with leading nonzero coefficient equal to 1
    for lead in 0..d {
        let free = d - lead - 1;
        let count = (p as usize).pow(free as u32);
        for t in 0..count {
            let mut v = basis[lead].clone();
            let mut t = t;
            for b in &basis[lead + 1..] {
                let c = (t % p as usize) as u32;
                t /= p as usize;
                if c != 0 {
                    for k in 0..dim {
                        v[k] = (v[k] + c * b[k]) % p;
                    }
                }
            }
            normalize(&mut v, p);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_seven() {
        for a in 1..7 {
            assert_eq!(a * inv_mod(a, 7) % 7, 1);
        }
    }

    #[test]
    fn kernel_of_single_equation() {
        let mut e = Echelon::new(3, 3);
        assert!(e.insert(vec![1, 1, 0]));
        assert!(!e.insert(vec![2, 2, 0]));
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for x in &k {
            assert_eq!((x[0] + x[1]) % 3, 0);
        }
    }

    #[test]
    fn projective_point_count() {
        let basis = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let mut pts = projective_points(&basis, 5, 3);
        assert_eq!(pts.len(), 31);
        pts.sort();
        pts.dedup();
        assert_eq!(pts.len(), 31);
    }
}
