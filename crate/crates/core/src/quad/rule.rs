use num_complex::Complex64;

/// A frozen quadrature rule `f ↦ Σ w_j f(x_j)` with complex weights.
///
/// Built once from an adaptive run on a reference integrand, it is a linear
/// functional that varies smoothly with any parameter the integrand depends
/// on, which makes it usable inside outer integrals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<Complex64>,
}

impl LinearRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn push(&mut self, x: f64, w: Complex64) {
        self.nodes.push(x);
        self.weights.push(w);
    }

    pub fn extend(&mut self, other: &LinearRule) {
        self.nodes.extend_from_slice(&other.nodes);
        self.weights.extend_from_slice(&other.weights);
    }

    pub fn apply<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn apply_real<F: Fn(f64) -> f64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Change of variables: node `v` becomes `node(v)` and its weight is
    /// multiplied by `factor(v)`.
    pub fn mapped<N, W>(&self, node: N, factor: W) -> LinearRule
    where
        N: Fn(f64) -> f64,
        W: Fn(f64) -> Complex64,
    {
        LinearRule {
            nodes: self.nodes.iter().map(|&v| node(v)).collect(),
            weights: self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&v, &w)| w * factor(v))
                .collect(),
        }
    }

    /// Drops nodes whose weight is exactly zero.
    pub fn pruned(mut self) -> LinearRule {
        let keep: Vec<bool> = self
            .weights
            .iter()
            .map(|w| *w != Complex64::new(0.0, 0.0))
            .collect();
        let mut k = keep.iter();
        self.nodes.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        self.weights.retain(|_| *k.next().unwrap());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_map() {
        let r = LinearRule {
            nodes: vec![0.0, 1.0, 2.0],
            weights: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.5, 1.0),
            ],
        };
        assert_eq!(r.apply_real(|x| x + 1.0), Complex64::new(2.5, 3.0));
        let m = r.mapped(|v| 2.0 * v, |v| Complex64::new(v, 0.0));
        assert_eq!(m.nodes, vec![0.0, 2.0, 4.0]);
        assert_eq!(m.weights[2], Complex64::new(1.0, 2.0));
        let p = m.pruned();
        assert_eq!(p.len(), 1);
        assert_eq!(p.nodes, vec![4.0]);
    }
}
