//! The quadratic towers used by the atlas. Every constant lives in the
//! universal tower; entries are stored in the smallest prefix that holds them.

use once_cell::sync::Lazy;
use quartica_core::{TowerBuilder, TowerRef};

fn build(spec: &[(&str, Radicand)]) -> TowerRef {
    let mut b = TowerBuilder::new();
    for (name, r) in spec {
        b = match r {
            Radicand::Int(n) => b.adjoin_int(name, *n),
            Radicand::Root(g) => b.adjoin_root_of(name, g),
        }
        .expect("atlas towers are non-degenerate");
    }
    b.build()
}

enum Radicand {
    Int(i64),
    Root(&'static str),
}

use Radicand::{Int, Root};

static GAUSS_R2: Lazy<TowerRef> = Lazy::new(|| build(&[("i", Int(-1)), ("r2", Int(2))]));
static FERMAT: Lazy<TowerRef> = Lazy::new(|| build(&[("i", Int(-1)), ("r2", Int(2)), ("q2", Root("r2"))]));
static TACNODE: Lazy<TowerRef> = Lazy::new(|| build(&[("i", Int(-1)), ("r2", Int(2)), ("q2", Root("r2")), ("s3", Int(3))]));
static KK: Lazy<TowerRef> = Lazy::new(|| build(&[("i", Int(-1)), ("s5", Int(5))]));
static UNIVERSAL: Lazy<TowerRef> =
    Lazy::new(|| build(&[("i", Int(-1)), ("r2", Int(2)), ("q2", Root("r2")), ("s3", Int(3)), ("s5", Int(5))]));

/// `Q(i, r2)`: the Fermat conic family.
pub fn gauss_r2() -> TowerRef {
    GAUSS_R2.clone()
}

/// `Q(i, r2, q2)` with `q2^2 = r2`: everything about the Fermat quartic
/// except the tacnodes.
pub fn fermat() -> TowerRef {
    FERMAT.clone()
}

/// The Fermat tower with `s3` adjoined, for the tacnodes.
pub fn tacnode() -> TowerRef {
    TACNODE.clone()
}

/// `Q(i, s5)`: the Komiya-Kuribayashi data.
pub fn kk() -> TowerRef {
    KK.clone()
}

/// `Q(i, r2, q2, s3, s5)`, degree 32.
pub fn universal() -> TowerRef {
    UNIVERSAL.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subtowers_embed_in_the_universal_tower() {
        let u = universal();
        assert_eq!(u.degree(), 32);
        for t in [gauss_r2(), fermat(), tacnode(), kk()] {
            assert!(t.embedding_into(&u).is_some(), "{}", t.spec());
        }
        assert_eq!(u.spec(), "Q(i:-1,r2:2,q2:r2,s3:3,s5:5)");
    }
}
