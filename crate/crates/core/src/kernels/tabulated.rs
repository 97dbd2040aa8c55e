use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::{Symbol, SymbolValues};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symbol sampled on a grid; `A` and `B` are piecewise cubic Hermite
/// interpolants of the samples and their tabulated slopes, and `A′`, `B′`
/// are the derivatives of those interpolants.
///
/// Accuracy is that of the sampling; nothing is checked beyond the grid
/// being strictly ascending.
#[derive(Clone, Debug)]
pub struct TabulatedSymbol<T> {
    x: Vec<T>,
    a: Vec<T>,
    b: Vec<T>,
    da: Vec<T>,
    db: Vec<T>,
}

#[derive(Deserialize)]
struct Row {
    x: f64,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "Aprime")]
    da: f64,
    #[serde(rename = "Bprime")]
    db: f64,
}

impl<T: Real> TabulatedSymbol<T> {
    pub fn new(x: Vec<T>, a: Vec<T>, b: Vec<T>, da: Vec<T>, db: Vec<T>) -> Result<Self> {
        let n = x.len();
        if n < 2 || [a.len(), b.len(), da.len(), db.len()].iter().any(|&m| m != n) {
            return Err(Error::arg("tabulated symbol needs at least two samples of equal length"));
        }
        for i in 0..n {
            if ![x[i], a[i], b[i], da[i], db[i]].iter().all(|v| v.is_finite()) {
                return Err(Error::Csv { row: i + 1, msg: "non-finite value".into() });
            }
            if i > 0 && !(x[i] > x[i - 1]) {
                return Err(Error::Csv { row: i + 1, msg: "x must be strictly ascending".into() });
            }
        }
        Ok(TabulatedSymbol { x, a, b, da, db })
    }

    /// Reads columns `x,A,B,Aprime,Bprime`; row numbers in errors count data rows from 1.
    pub fn from_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let (mut x, mut a, mut b, mut da, mut db) = (vec![], vec![], vec![], vec![], vec![]);
        for (i, rec) in rdr.deserialize::<Row>().enumerate() {
            let r = rec.map_err(|e| Error::Csv { row: i + 1, msg: e.to_string() })?;
            x.push(T::lit(r.x));
            a.push(T::lit(r.a));
            b.push(T::lit(r.b));
            da.push(T::lit(r.da));
            db.push(T::lit(r.db));
        }
        Self::new(x, a, b, da, db)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let f = std::fs::File::open(path.as_ref()).map_err(|e| Error::Io(e.to_string()))?;
        Self::from_reader(f)
    }

    pub fn range(&self) -> (T, T) {
        (self.x[0], self.x[self.x.len() - 1])
    }
}

impl<T: Real> Symbol<T> for TabulatedSymbol<T> {
    fn eval(&self, x: T) -> Result<SymbolValues<T>> {
        let (lo, hi) = self.range();
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfDomain { value: x.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() });
        }
        let i = match self.x.partition_point(|&v| v <= x) {
            0 => 0,
            k => (k - 1).min(self.x.len() - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let s = (x - self.x[i]) / h;
        let (a, da) = hermite(s, h, self.a[i], self.a[i + 1], self.da[i], self.da[i + 1]);
        let (b, db) = hermite(s, h, self.b[i], self.b[i + 1], self.db[i], self.db[i + 1]);
        Ok(SymbolValues { a, b, da, db })
    }
}

/// Cubic Hermite value and derivative at local coordinate `s ∈ [0, 1]`.
fn hermite<T: Real>(s: T, h: T, y0: T, y1: T, d0: T, d1: T) -> (T, T) {
    let (one, two, three, six) = (T::one(), T::lit(2.0), T::lit(3.0), T::lit(6.0));
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = two * s3 - three * s2 + one;
    let h10 = s3 - two * s2 + s;
    let h01 = -two * s3 + three * s2;
    let h11 = s3 - s2;
    let value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let g00 = six * s2 - six * s;
    let g10 = three * s2 - two * two * s + one;
    let g01 = -g00;
    let g11 = three * s2 - two * s;
    let slope = (g00 * y0 + g01 * y1) / h + g10 * d0 + g11 * d1;
    (value, slope)
}
