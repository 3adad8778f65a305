//! Z_p-valued 0- and 1-chains on finite graphs and the boundary operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ToyGraph;

/// The cyclic group Z_p; `p` need not be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn is_prime(self) -> bool {
        let p = self.0 as u64;
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
    }

    /// Multiplicative inverse; requires `gcd(a, p) = 1`.
    pub fn inv(self, a: u32) -> Option<u32> {
        let (mut r0, mut r1) = (self.0 as i64, a as i64 % self.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.reduce(t0))
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

macro_rules! chain_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            modulus: Modulus,
            values: Vec<u32>,
        }

        impl $name {
            pub fn zeros(len: usize, modulus: Modulus) -> Self {
                $name { modulus, values: vec![0; len] }
            }

            /// Values are reduced modulo `p`.
            pub fn from_values(values: impl IntoIterator<Item = i64>, modulus: Modulus) -> Self {
                let values = values.into_iter().map(|v| modulus.reduce(v)).collect();
                $name { modulus, values }
            }

            pub fn modulus(&self) -> Modulus {
                self.modulus
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            pub fn get(&self, i: usize) -> u32 {
                self.values[i]
            }

            pub fn set(&mut self, i: usize, value: i64) {
                self.values[i] = self.modulus.reduce(value);
            }

            pub fn values(&self) -> &[u32] {
                &self.values
            }

            pub fn is_zero(&self) -> bool {
                self.values.iter().all(|&v| v == 0)
            }

            /// Sum of all values mod p.
            pub fn total(&self) -> u32 {
                let p = self.modulus;
                self.values.iter().fold(0, |acc, &v| p.add(acc, v))
            }

            /// Nonzero `(index, value)` pairs in index order.
            pub fn entries(&self) -> Vec<(usize, u32)> {
                self.values
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| (i, v))
                    .collect()
            }

            pub fn from_entries(len: usize, modulus: Modulus, entries: &[(usize, i64)]) -> Result<Self> {
                let mut chain = $name::zeros(len, modulus);
                for &(i, v) in entries {
                    if i >= len {
                        return Err(Error::ChainShape { expected: len, got: i + 1 });
                    }
                    chain.values[i] = modulus.reduce(chain.values[i] as i64 + v);
                }
                Ok(chain)
            }
        }
    };
}

chain_type!(
    /// Function from vertices to Z_p.
    Chain0
);
chain_type!(
    /// Function from oriented edges to Z_p; the reversed edge carries the
    /// negated value.
    Chain1
);

impl Chain0 {
    /// The fundamental class: 1 on every vertex.
    pub fn ones(len: usize, modulus: Modulus) -> Self {
        Chain0::from_values(std::iter::repeat_n(1, len), modulus)
    }
}

impl Chain1 {
    /// Value on edge `edge` read in the given direction.
    pub fn oriented(&self, edge: usize, forward: bool) -> u32 {
        if forward {
            self.values[edge]
        } else {
            self.modulus.neg(self.values[edge])
        }
    }
}

/// `∂[x → y] = y − x`, extended linearly.
pub fn boundary(psi: &Chain1, graph: &ToyGraph) -> Result<Chain0> {
    if psi.len() != graph.edge_count() {
        return Err(Error::ChainShape {
            expected: graph.edge_count(),
            got: psi.len(),
        });
    }
    let p = psi.modulus();
    let mut out = Chain0::zeros(graph.vertex_count(), p);
    for (e, &k) in graph.edges().iter().zip(psi.values()) {
        if k == 0 {
            continue;
        }
        out.values[e.head] = p.add(out.values[e.head], k);
        out.values[e.tail] = p.sub(out.values[e.tail], k);
    }
    Ok(out)
}

/// Vertices where `∂ψ` differs from `c`, in increasing order.
pub fn residual(graph: &ToyGraph, psi: &Chain1, c: &Chain0) -> Result<Vec<usize>> {
    if psi.modulus() != c.modulus() {
        return Err(Error::ModulusMismatch(psi.modulus().get(), c.modulus().get()));
    }
    if c.len() != graph.vertex_count() {
        return Err(Error::ChainShape {
            expected: graph.vertex_count(),
            got: c.len(),
        });
    }
    let d = boundary(psi, graph)?;
    Ok((0..c.len()).filter(|&v| d.get(v) != c.get(v)).collect())
}
