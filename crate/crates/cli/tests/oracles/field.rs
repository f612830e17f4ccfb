//! `F_q` for `q = p` or `p²` by explicit tables, and brute-force counts of
//! small matrix groups over it.

pub struct Field {
    pub q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl Field {
    /// `F_p` when `k = 1`; `F_p[t]/(f)` with `f` the first monic irreducible
    /// quadratic found by search when `k = 2`. Element `a + b t` is `a + b p`.
    pub fn new(p: usize, k: u32) -> Field {
        match k {
            1 => Field {
                q: p,
                add: (0..p).map(|a| (0..p).map(|b| (a + b) % p).collect()).collect(),
                mul: (0..p).map(|a| (0..p).map(|b| (a * b) % p).collect()).collect(),
            },
            2 => {
                // t² = c0 + c1 t, irreducible iff no root in F_p.
                let (c0, c1) = (0..p)
                    .flat_map(|c0| (0..p).map(move |c1| (c0, c1)))
                    .find(|&(c0, c1)| (0..p).all(|x| !(x * x + p * p - c1 * x % p - c0).is_multiple_of(p)))
                    .expect("an irreducible quadratic exists");
                let q = p * p;
                let split = |e: usize| (e % p, e / p);
                let join = |a: usize, b: usize| a % p + (b % p) * p;
                let add = (0..q)
                    .map(|x| {
                        (0..q)
                            .map(|y| {
                                let ((a, b), (c, d)) = (split(x), split(y));
                                join(a + c, b + d)
                            })
                            .collect()
                    })
                    .collect();
                let mul = (0..q)
                    .map(|x| {
                        (0..q)
                            .map(|y| {
                                let ((a, b), (c, d)) = (split(x), split(y));
                                // (a + bt)(c + dt) = ac + (ad + bc) t + bd t²
                                let bd = b * d % p;
                                join(a * c + bd * c0, a * d + b * c + bd * c1)
                            })
                            .collect()
                    })
                    .collect();
                Field { q, add, mul }
            }
            _ => unreachable!("only prime fields and quadratic extensions"),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

fn det2(f: &Field, m: [usize; 4]) -> usize {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

fn all_2x2(q: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..q * q * q * q).map(move |n| [n % q, n / q % q, n / (q * q) % q, n / (q * q * q)])
}

/// `|GL_1(F_q)|`.
pub fn gl1(f: &Field) -> u64 {
    (0..f.q).filter(|&a| a != 0).count() as u64
}

/// `|GL_2(F_q)|`.
pub fn gl2(f: &Field) -> u64 {
    all_2x2(f.q).filter(|&m| det2(f, m) != 0).count() as u64
}

/// `|Sp_2(F_q)| = |SL_2(F_q)|`.
pub fn sp2(f: &Field) -> u64 {
    all_2x2(f.q).filter(|&m| det2(f, m) == 1).count() as u64
}

/// `|U_1(q)|`: norm-one elements of `F_{q²}`; `f2` is `F_{q²}`.
pub fn u1(f2: &Field, q: usize) -> u64 {
    (0..f2.q).filter(|&x| f2.mul(x, f2.pow(x, q)) == 1).count() as u64
}

/// `|U_2(q)|`: matrices over `F_{q²}` with `A^* A = 1` for the standard
/// Hermitian form, `A^*` the conjugate transpose.
pub fn u2(f2: &Field, q: usize) -> u64 {
    let conj: Vec<usize> = (0..f2.q).map(|x| f2.pow(x, q)).collect();
    all_2x2(f2.q)
        .filter(|&[a, b, c, d]| {
            // columns (a, c) and (b, d)
            let h = |x: usize, y: usize, z: usize, w: usize| f2.add(f2.mul(conj[x], y), f2.mul(conj[z], w));
            h(a, a, c, c) == 1 && h(b, b, d, d) == 1 && h(a, b, c, d) == 0
        })
        .count() as u64
}
