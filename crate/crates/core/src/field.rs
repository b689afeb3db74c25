//! Uniformly sampled real-valued fields.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Clamped,
}

/// Uniformly sampled function on the half-open grid x_i = x0 + i*step,
/// i = 0..len.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    values: Vec<f64>,
    x0: f64,
    step: f64,
    boundary: Boundary,
}

impl SampledField {
    pub fn new(values: Vec<f64>, x0: f64, step: f64, boundary: Boundary) -> Result<Self> {
        if values.len() < 8 {
            return Err(Error::Insufficient(format!(
                "sampled field needs >= 8 values, got {}",
                values.len()
            )));
        }
        if !(step > 0.0) {
            return Err(Error::Parameter(format!("grid step must be positive, got {step}")));
        }
        Ok(Self {
            values,
            x0,
            step,
            boundary,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Width of the sampled window (half-open convention).
    pub fn span(&self) -> f64 {
        self.step * self.values.len() as f64
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.step
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    /// Pointwise affine map a*V + b.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| a * v + b).collect(),
            ..self.clone()
        }
    }

    /// CSV with `x,value` columns.
    pub fn to_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{},{}", self.x_at(i), v)?;
        }
        Ok(())
    }

    pub fn from_csv<R: BufRead>(r: R, boundary: Boundary) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || (i == 0 && t == "x,value") {
                continue;
            }
            let (xs_, vs_) = t.split_once(',').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: "expected `x,value`".into(),
            })?;
            let x: f64 = xs_.trim().parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("bad x {xs_:?}"),
            })?;
            let v: f64 = vs_.trim().parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("bad value {vs_:?}"),
            })?;
            xs.push(x);
            vs.push(v);
        }
        if xs.len() < 2 {
            return Err(Error::Insufficient("field csv needs >= 2 rows".into()));
        }
        let step = xs[1] - xs[0];
        SampledField::new(vs, xs[0], step, boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_or_bad_step() {
        assert!(SampledField::new(vec![0.0; 4], 0.0, 1.0, Boundary::Clamped).is_err());
        assert!(SampledField::new(vec![0.0; 16], 0.0, 0.0, Boundary::Clamped).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let f = SampledField::new((0..16).map(|i| i as f64 * 0.5).collect(), 2.0, 0.25, Boundary::Periodic)
            .unwrap();
        let mut buf = Vec::new();
        f.to_csv(&mut buf).unwrap();
        let g = SampledField::from_csv(&buf[..], Boundary::Periodic).unwrap();
        assert_eq!(f.values(), g.values());
        assert!((f.step() - g.step()).abs() < 1e-12);
    }
}
