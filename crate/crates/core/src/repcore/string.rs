use std::fmt;
use std::sync::Arc;

use crate::linalg::{Field, Matrix};
use crate::presentation::{LetterClass, Presentation, RelationKind};

use super::{RepError, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Direct,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: String,
    pub direction: Direction,
}

/// A walk in the quiver starting at `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    pub base: String,
    pub letters: Vec<Letter>,
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for l in &self.letters {
            let e = if l.direction == Direction::Direct { "+1" } else { "-1" };
            write!(f, " {}^{e}", l.arrow)?;
        }
        Ok(())
    }
}

impl StringWord {
    pub fn new(base: &str, letters: Vec<Letter>) -> StringWord {
        StringWord { base: base.to_string(), letters }
    }

    /// Builds a walk from a list of steps `(class, next vertex)`; each step follows the unique
    /// arrow of that class joining the current vertex and the next one, in whichever direction
    /// it points.
    pub fn through(p: &Presentation, base: &str, steps: &[(LetterClass, &str)]) -> Result<StringWord, RepError> {
        let mut at = base.to_string();
        let mut letters = Vec::new();
        for &(class, next) in steps {
            let fwd = p.arrows().iter().find(|a| a.class == class && a.source == at && a.target == next);
            let bwd = p.arrows().iter().find(|a| a.class == class && a.source == next && a.target == at);
            let letter = match (fwd, bwd) {
                (Some(a), None) => Letter { arrow: a.name.clone(), direction: Direction::Direct },
                (None, Some(a)) => Letter { arrow: a.name.clone(), direction: Direction::Inverse },
                (Some(_), Some(_)) => {
                    return Err(RepError::InvalidString(format!("ambiguous {class} step {at} - {next}")))
                }
                (None, None) => {
                    return Err(RepError::InvalidString(format!("no {class} arrow between {at} and {next}")))
                }
            };
            letters.push(letter);
            at = next.to_string();
        }
        Ok(StringWord { base: base.to_string(), letters })
    }

    /// Vertices visited by the walk, starting with the base.
    pub fn vertices(&self, p: &Presentation) -> Result<Vec<String>, RepError> {
        let mut at = self.base.clone();
        p.require_vertex(&at)?;
        let mut out = vec![at.clone()];
        for (i, l) in self.letters.iter().enumerate() {
            let a = &p.arrows()[p.require_arrow(&l.arrow)?];
            let (from, to) = match l.direction {
                Direction::Direct => (&a.source, &a.target),
                Direction::Inverse => (&a.target, &a.source),
            };
            if *from != at {
                return Err(RepError::InvalidString(format!("letter {} ({}) does not start at {at}", i + 1, l.arrow)));
            }
            at = to.clone();
            out.push(at.clone());
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// The string module of `w`: one basis vector per position of the walk.
pub fn string_module(p: &Arc<Presentation>, field: Field, w: &StringWord) -> Result<Representation, RepError> {
    let walk = w.vertices(p)?;
    for pair in w.letters.windows(2) {
        if pair[0].arrow == pair[1].arrow && pair[0].direction != pair[1].direction {
            return Err(RepError::InvalidString(format!("immediate backtrack on {}", pair[0].arrow)));
        }
    }
    // maximal runs of equally directed letters must avoid zero relations
    for r in p.relations().iter().filter(|r| r.kind == RelationKind::Zero) {
        let z = &r.left;
        let n = z.len();
        for i in 0..w.letters.len() {
            if i + n > w.letters.len() {
                break;
            }
            let run = &w.letters[i..i + n];
            let dir = run[0].direction;
            if run.iter().any(|l| l.direction != dir) {
                continue;
            }
            // written order of z is reverse application order for direct runs
            let names: Vec<&str> = run.iter().map(|l| l.arrow.as_str()).collect();
            let hit = match dir {
                Direction::Direct => names.iter().rev().zip(z.iter()).all(|(a, b)| a == b),
                Direction::Inverse => names.iter().zip(z.iter()).all(|(a, b)| a == b),
            };
            if hit {
                return Err(RepError::InvalidString(format!("contains the zero relation '{}'", z.join(" "))));
            }
        }
    }

    let nv = p.vertex_count();
    let mut dims = vec![0usize; nv];
    let mut local = Vec::with_capacity(walk.len());
    for v in &walk {
        let x = p.require_vertex(v)?;
        local.push((x, dims[x]));
        dims[x] += 1;
    }
    let mut mats: Vec<Matrix> = (0..p.arrow_count())
        .map(|a| {
            let (s, t) = p.ends(a);
            Matrix::zeros(field, dims[t], dims[s])
        })
        .collect();
    for (i, l) in w.letters.iter().enumerate() {
        let a = p.require_arrow(&l.arrow)?;
        let (from, to) = match l.direction {
            Direction::Direct => (local[i], local[i + 1]),
            Direction::Inverse => (local[i + 1], local[i]),
        };
        mats[a].set(to.1, from.1, field.one());
    }
    Representation::new(p.clone(), field, dims, mats).map_err(|e| match e {
        RepError::RelationViolated(r) => RepError::InvalidString(format!("violates {r}")),
        e => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::build_lambda;
    use LetterClass::{Alpha, Beta};

    #[test]
    fn empty_word_is_simple() {
        let p = Arc::new(build_lambda(1, 0).unwrap());
        let s = string_module(&p, Field::Rational, &StringWord::new("d0", vec![])).unwrap();
        assert_eq!(s.total_dim(), 1);
        assert_eq!(s.dim_named("d0"), 1);
    }

    #[test]
    fn z3_walk() {
        let p = Arc::new(build_lambda(1, 3).unwrap());
        let w = StringWord::through(&p, "a3", &[(Beta, "b2"), (Alpha, "b3"), (Beta, "c2"), (Alpha, "a2")]).unwrap();
        let m = string_module(&p, Field::Rational, &w).unwrap();
        assert_eq!(m.total_dim(), 5);
        for v in ["a3", "b2", "b3", "c2", "a2"] {
            assert_eq!(m.dim_named(v), 1);
        }
    }

    #[test]
    fn mixed_direct_letters_rejected() {
        let p = Arc::new(build_lambda(1, 1).unwrap());
        // a1 -alpha-> d0 -beta-> d1 composes to a zero relation
        let w = StringWord::new(
            "a1",
            vec![
                Letter { arrow: "alpha_a1".into(), direction: Direction::Direct },
                Letter { arrow: "beta_d0".into(), direction: Direction::Direct },
            ],
        );
        let err = string_module(&p, Field::Rational, &w).unwrap_err();
        assert!(matches!(err, RepError::InvalidString(_)), "{err}");
    }

    #[test]
    fn backtrack_and_composability() {
        let p = Arc::new(build_lambda(1, 1).unwrap());
        let back = StringWord::new(
            "a1",
            vec![
                Letter { arrow: "alpha_a1".into(), direction: Direction::Direct },
                Letter { arrow: "alpha_a1".into(), direction: Direction::Inverse },
            ],
        );
        assert!(string_module(&p, Field::Rational, &back).unwrap_err().to_string().contains("backtrack"));
        let off = StringWord::new("a0", vec![Letter { arrow: "alpha_a1".into(), direction: Direction::Direct }]);
        assert!(string_module(&p, Field::Rational, &off).is_err());
    }

    #[test]
    fn loop_string() {
        let p = Arc::new(build_lambda(1, 0).unwrap());
        let w = StringWord::through(&p, "a0", &[(Beta, "u")]).unwrap();
        let m = string_module(&p, Field::Rational, &w).unwrap();
        assert_eq!(m.total_dim(), 2);
        assert!(StringWord::through(&p, "u", &[(Alpha, "u")]).is_err());
    }
}
