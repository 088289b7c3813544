use super::PermError;

/// Small finite field with precomputed tables. Elements are `0..q`, read as
/// base-`p` coefficient vectors of a polynomial modulo a fixed irreducible.
#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    primitive: usize,
}

// Monic irreducible polynomials, low coefficient first (leading 1 omitted).
fn modulus(q: usize) -> Option<(usize, Vec<usize>)> {
    Some(match q {
        2 | 3 | 5 | 7 | 11 | 13 => (q, vec![0]),
        4 => (2, vec![1, 1]),        // x^2 + x + 1
        8 => (2, vec![1, 1, 0]),     // x^3 + x + 1
        9 => (3, vec![1, 0]),        // x^2 + 1
        16 => (2, vec![1, 1, 0, 0]), // x^4 + x + 1
        _ => return None,
    })
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut y = x;
    for d in out.iter_mut() {
        *d = y % p;
        y /= p;
    }
    out
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl FiniteField {
    pub fn new(q: usize) -> Result<FiniteField, PermError> {
        let (p, low) = modulus(q).ok_or(PermError::UnsupportedField(q))?;
        let k = if p == q { 1 } else { low.len() };
        let mut add = vec![vec![0; q]; q];
        let mut mul = vec![vec![0; q]; q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a][b] = undigits(&s, p);
                if k == 1 {
                    mul[a][b] = (a * b) % p;
                    continue;
                }
                let mut prod = vec![0usize; 2 * k - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                // x^k = -(low part)
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in low.iter().enumerate() {
                        let sub = (c * m) % p;
                        prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
                    }
                }
                mul[a][b] = undigits(&prod[..k], p);
            }
        }
        let mut f = FiniteField {
            q,
            p,
            add,
            mul,
            primitive: 0,
        };
        f.primitive = (1..q)
            .find(|&g| f.mult_order(g) == q - 1)
            .expect("multiplicative group of a field is cyclic");
        Ok(f)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul[a][b] == 1)
    }

    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    pub fn mult_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul[x][a];
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn nonzero_squares(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (1..self.q).map(|x| self.mul[x][x]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}
