//! Named matrices and codes: `sylvester-t`, `paley1-q`, `paley2-q`,
//! `kron-a-b` (both factors are fixture names), `mckay-q`, `pless48` and
//! `file:<path>` (a bare path also works).

use std::fmt;
use std::path::PathBuf;

use crate::codes::ZmCode;
use crate::error::{ForgeError, Result};
use crate::matrices::{kronecker, mckay_input, paley_one, paley_two, read_matrix, sylvester, SignMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureId {
    Sylvester(u32),
    PaleyOne(u64),
    PaleyTwo(u64),
    Kronecker(Box<FixtureId>, Box<FixtureId>),
    Mckay(u64),
    Pless48,
    File(PathBuf),
}

/// What a fixture resolves to.
#[derive(Clone, Debug)]
pub enum Fixture {
    Matrix(SignMatrix),
    Code(ZmCode),
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Sylvester(t) => write!(f, "sylvester-{t}"),
            FixtureId::PaleyOne(q) => write!(f, "paley1-{q}"),
            FixtureId::PaleyTwo(q) => write!(f, "paley2-{q}"),
            FixtureId::Kronecker(a, b) => write!(f, "kron-{a}-{b}"),
            FixtureId::Mckay(q) => write!(f, "mckay-{q}"),
            FixtureId::Pless48 => write!(f, "pless48"),
            FixtureId::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn number<T: std::str::FromStr>(s: &str) -> Option<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a name that is not a file reference.
fn parse_named(s: &str) -> Option<FixtureId> {
    if s == "pless48" {
        return Some(FixtureId::Pless48);
    }
    if let Some(rest) = s.strip_prefix("kron-") {
        return rest.match_indices('-').find_map(|(i, _)| {
            let a = parse_named(&rest[..i])?;
            let b = parse_named(&rest[i + 1..])?;
            Some(FixtureId::Kronecker(Box::new(a), Box::new(b)))
        });
    }
    let (kind, arg) = s.rsplit_once('-')?;
    match kind {
        "sylvester" => number(arg).map(FixtureId::Sylvester),
        "paley1" => number(arg).map(FixtureId::PaleyOne),
        "paley2" => number(arg).map(FixtureId::PaleyTwo),
        "mckay" => number(arg).map(FixtureId::Mckay),
        _ => None,
    }
}

impl std::str::FromStr for FixtureId {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(FixtureId::File(PathBuf::from(path)));
        }
        if let Some(id) = parse_named(s) {
            return Ok(id);
        }
        let path = PathBuf::from(s);
        if path.exists() {
            return Ok(FixtureId::File(path));
        }
        Err(ForgeError::InvalidParameter(format!("unknown fixture or missing file {s:?}")))
    }
}

impl FixtureId {
    pub fn resolve(&self) -> Result<Fixture> {
        match self {
            FixtureId::Pless48 => Ok(Fixture::Code(pless_symmetry_code(23)?)),
            _ => self.matrix().map(Fixture::Matrix),
        }
    }

    /// The Hadamard matrix named by this fixture.
    pub fn matrix(&self) -> Result<SignMatrix> {
        match self {
            FixtureId::Sylvester(t) => sylvester(*t),
            FixtureId::PaleyOne(q) => paley_one(*q),
            FixtureId::PaleyTwo(q) => paley_two(*q),
            FixtureId::Kronecker(a, b) => kronecker(&a.matrix()?, &b.matrix()?),
            FixtureId::Mckay(q) => mckay_input(*q),
            FixtureId::File(p) => read_matrix(p),
            FixtureId::Pless48 => Err(ForgeError::InvalidParameter("pless48 is a code, not a matrix".into())),
        }
    }
}

/// Pless symmetry code over GF(3) of length `2(q + 1)`, generated by
/// `[I | S]` with `S` the Paley conference matrix of order `q + 1`
/// (`q ≡ 2 mod 3` prime, `q ≡ 3 mod 4`).
pub fn pless_symmetry_code(q: u64) -> Result<ZmCode> {
    if q % 3 != 2 {
        return Err(ForgeError::InvalidParameter(format!("{q} is not 2 mod 3")));
    }
    let h = paley_one(q)?;
    let c = h.order();
    let rows: Vec<Vec<i64>> = (0..c)
        .map(|i| {
            let mut r = vec![0i64; 2 * c];
            r[i] = 1;
            for j in 0..c {
                r[c + j] = h.get(i, j) as i64 - i64::from(i == j);
            }
            r
        })
        .collect();
    ZmCode::from_rows(&rows, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("sylvester-3".parse::<FixtureId>().unwrap(), FixtureId::Sylvester(3));
        assert_eq!("paley1-23".parse::<FixtureId>().unwrap(), FixtureId::PaleyOne(23));
        assert_eq!(
            "kron-paley1-11-sylvester-1".parse::<FixtureId>().unwrap(),
            FixtureId::Kronecker(Box::new(FixtureId::PaleyOne(11)), Box::new(FixtureId::Sylvester(1)))
        );
        let nested: FixtureId = "kron-kron-sylvester-1-sylvester-1-paley2-5".parse().unwrap();
        assert_eq!(nested.matrix().unwrap().order(), 48);
        assert_eq!(nested.to_string().parse::<FixtureId>().unwrap(), nested);
        assert!("paley1-x".parse::<FixtureId>().is_err());
        assert!(matches!("file:/nowhere".parse::<FixtureId>().unwrap(), FixtureId::File(_)));
    }

    #[test]
    fn resolve_kinds() {
        assert!(matches!(FixtureId::PaleyOne(11).resolve().unwrap(), Fixture::Matrix(_)));
        let Fixture::Code(c) = FixtureId::Pless48.resolve().unwrap() else { panic!() };
        assert_eq!(c.length(), 48);
        assert!(c.is_self_dual());
    }
}
