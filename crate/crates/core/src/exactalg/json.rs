//! JSON forms of the exact types.
//!
//! A polynomial is `{"e":[exponents ascending],"c":[coefficients]}` and a
//! matrix is `{"rows":r,"cols":c,"data":[row-major entries]}`. Integers are
//! emitted as plain JSON numbers of arbitrary size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use super::integer::IntMatrix;
use super::matrix::Matrix;
use super::poly::LaurentPoly;

/// Integer wrapper that serializes as an exact JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map(JsonInt).map_err(D::Error::custom)
    }
}

impl Serialize for LaurentPoly<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Form {
            e: Vec<i32>,
            c: Vec<JsonInt>,
        }
        Form {
            e: self.terms().iter().map(|t| t.0).collect(),
            c: self.terms().iter().map(|t| JsonInt(t.1.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Form {
            e: Vec<i32>,
            c: Vec<JsonInt>,
        }
        let f = Form::deserialize(d)?;
        if f.e.len() != f.c.len() {
            return Err(D::Error::custom("exponent and coefficient lists differ in length"));
        }
        if f.e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("exponents must be strictly ascending"));
        }
        if f.c.iter().any(|c| c.0 == BigInt::from(0)) {
            return Err(D::Error::custom("zero coefficient stored"));
        }
        Ok(LaurentPoly::from_terms(f.e.into_iter().zip(f.c.into_iter().map(|c| c.0))))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Form {
            rows: usize,
            cols: usize,
            data: Vec<JsonInt>,
        }
        Form { rows: self.rows(), cols: self.cols(), data: self.data().iter().cloned().map(JsonInt).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Form {
            rows: usize,
            cols: usize,
            data: Vec<JsonInt>,
        }
        let f = Form::deserialize(d)?;
        if f.data.len() != f.rows * f.cols {
            return Err(D::Error::custom("matrix data length does not match rows*cols"));
        }
        Ok(Matrix::from_vec(f.rows, f.cols, f.data.into_iter().map(|x| x.0).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;
    use proptest::prelude::*;

    #[test]
    fn polynomial_wire_form() {
        let p = Poly::from_terms([(1, BigInt::from(1)), (-1, BigInt::from(1))]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"e":[-1,1],"c":[1,1]}"#);
        let back: Poly = serde_json::from_str(r#"{"e":[-1,1],"c":[1,1]}"#).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), r#"{"e":[],"c":[]}"#);
    }

    #[test]
    fn huge_coefficients_survive() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let p = Poly::constant(big.clone());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"e":[0],"c":[123456789012345678901234567890]}"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back.coeff_at(0), big);
    }

    #[test]
    fn malformed_polynomials_rejected() {
        assert!(serde_json::from_str::<Poly>(r#"{"e":[1,0],"c":[1,1]}"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"{"e":[0],"c":[0]}"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"{"e":[0,1],"c":[1]}"#).is_err());
    }

    #[test]
    fn matrix_wire_form() {
        let m = IntMatrix::from_rows(vec![vec![1.into(), 0.into()], vec![0.into(), 2.into()]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"data":[1,0,0,2]}"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
    }

    use num_traits::Zero;

    proptest! {
        #[test]
        fn polynomial_json_roundtrip(ts in prop::collection::vec((-6i32..7, -50i64..51), 0..6)) {
            let p = Poly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c))));
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), p);
        }
    }
}
