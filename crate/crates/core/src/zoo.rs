//! Built-in example extensions, and seeded single-constant mutations of them.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{parse, AnyDocument, Document};
use crate::linalg::{seeded_rng, Matrix};
use crate::structures::{ComoduleAlgebra, StructureAlgebra, StructureCoalgebra};

pub const NAMES: [&str; 6] = ["TRIVIAL", "Z2GROUP", "QI", "FUN4", "PAULI", "TORUS3"];

const TRIVIAL: &str = "field Q
algebra
  dim 2
  basis u0 u1
  unit u0
  mul u0 u0 = u0
  mul u0 u1 = u1
  mul u1 u0 = u1
  mul u1 u1 = u0
end
coalgebra
  dim 1
  basis x
  counit x = 1
  comul x = x@x
end
coaction
  u0 = u0@x
  u1 = u1@x
end
grouplike x
corep triv
  basis v
  coact v = v@x
end
corep pair
  basis v w
  coact v = v@x
  coact w = w@x
end
";

const Z2GROUP: &str = "field Q
algebra
  dim 2
  basis u0 u1
  unit u0
  mul u0 u0 = u0
  mul u0 u1 = u1
  mul u1 u0 = u1
  mul u1 u1 = u0
end
coalgebra
  dim 2
  basis x0 x1
  counit x0 = 1
  counit x1 = 1
  comul x0 = x0@x0
  comul x1 = x1@x1
end
coaction
  u0 = u0@x0
  u1 = u1@x1
end
grouplike x0
corep deg0
  basis v
  coact v = v@x0
end
corep deg1
  basis v
  coact v = v@x1
end
corep reg
  basis w0 w1
  coact w0 = w0@x0 + -1*w1@x0 + w1@x1
  coact w1 = w1@x1
end
";

const QI: &str = "field Q
algebra
  dim 2
  basis one i
  unit one
  mul one one = one
  mul one i = i
  mul i one = i
  mul i i = -1*one
end
coalgebra
  dim 2
  basis de ds
  counit de = 1
  comul de = de@de + ds@ds
  comul ds = de@ds + ds@de
end
coaction
  one = one@de + one@ds
  i = i@de + -1*i@ds
end
grouplike de + ds
corep triv
  basis v
  coact v = v@de + v@ds
end
corep sign
  basis v
  coact v = v@de + -1*v@ds
end
corep reg
  basis a b
  coact a = a@de + b@ds
  coact b = a@ds + b@de
end
";

const FUN4: &str = "field Q
algebra
  dim 4
  basis d0 d1 d2 d3
  unit d0 + d1 + d2 + d3
  mul d0 d0 = d0
  mul d1 d1 = d1
  mul d2 d2 = d2
  mul d3 d3 = d3
end
coalgebra
  dim 2
  basis x0 x1
  counit x0 = 1
  counit x1 = 1
  comul x0 = x0@x0
  comul x1 = x1@x1
end
coaction
  d0 = 1/2*d0@x0 + 1/2*d0@x1 + 1/2*d2@x0 + -1/2*d2@x1
  d1 = 1/2*d1@x0 + 1/2*d1@x1 + 1/2*d3@x0 + -1/2*d3@x1
  d2 = 1/2*d0@x0 + -1/2*d0@x1 + 1/2*d2@x0 + 1/2*d2@x1
  d3 = 1/2*d1@x0 + -1/2*d1@x1 + 1/2*d3@x0 + 1/2*d3@x1
end
grouplike x0
corep deg0
  basis v
  coact v = v@x0
end
corep deg1
  basis v
  coact v = v@x1
end
corep reg
  basis w0 w1
  coact w0 = w0@x0 + -1*w1@x0 + w1@x1
  coact w1 = w1@x1
end
";

/// `M_2(Q)` graded by `Z_2 × Z_2` through the Pauli matrices.
fn pauli() -> String {
    let basis = ["id", "x", "z", "xz"];
    let grades = ["g00", "g10", "g01", "g11"];
    // (a, b, sign, result): a·b = sign·result.
    let table = [
        ("x", "x", "", "id"),
        ("z", "z", "", "id"),
        ("x", "z", "", "xz"),
        ("z", "x", "-1*", "xz"),
        ("xz", "xz", "-1*", "id"),
        ("x", "xz", "", "z"),
        ("xz", "x", "-1*", "z"),
        ("z", "xz", "-1*", "x"),
        ("xz", "z", "", "x"),
    ];
    let mut s = String::from("field Q\nalgebra\n  dim 4\n  basis id x z xz\n  unit id\n");
    for b in basis {
        s += &format!("  mul id {b} = {b}\n");
        if b != "id" {
            s += &format!("  mul {b} id = {b}\n");
        }
    }
    for (a, b, sign, r) in table {
        s += &format!("  mul {a} {b} = {sign}{r}\n");
    }
    s += "end\ncoalgebra\n  dim 4\n  basis g00 g10 g01 g11\n";
    for g in grades {
        s += &format!("  counit {g} = 1\n  comul {g} = {g}@{g}\n");
    }
    s += "end\ncoaction\n";
    for (b, g) in basis.iter().zip(grades) {
        s += &format!("  {b} = {b}@{g}\n");
    }
    s += "end\ngrouplike g00\n";
    for g in grades {
        s += &format!("corep d{}\n  basis v\n  coact v = v@{g}\nend\n", &g[1..]);
    }
    s += "corep mixed\n  basis v w\n  coact v = v@g10\n  coact w = w@g01\nend\n";
    s
}

/// The quantum torus at a cube root of unity: `w_ab w_cd = ζ^{bc} w_{a+c,b+d}`,
/// graded by `Z_3 × Z_3`.
fn torus3() -> String {
    let zeta = ["", "[0,1]*", "[-1,-1]*"];
    let idx: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let w = |a: usize, b: usize| format!("w{a}{b}");
    let g = |a: usize, b: usize| format!("g{a}{b}");
    let labels = |f: &dyn Fn(usize, usize) -> String| idx.iter().map(|&(a, b)| f(a, b)).collect::<Vec<_>>().join(" ");
    let mut s = format!("field QZETA 3\nalgebra\n  dim 9\n  basis {}\n  unit w00\n", labels(&w));
    for &(a, b) in &idx {
        for &(c, d) in &idx {
            s += &format!("  mul {} {} = {}{}\n", w(a, b), w(c, d), zeta[(b * c) % 3], w((a + c) % 3, (b + d) % 3));
        }
    }
    s += &format!("end\ncoalgebra\n  dim 9\n  basis {}\n", labels(&g));
    for &(a, b) in &idx {
        s += &format!("  counit {0} = 1\n  comul {0} = {0}@{0}\n", g(a, b));
    }
    s += "end\ncoaction\n";
    for &(a, b) in &idx {
        s += &format!("  {} = {}@{}\n", w(a, b), w(a, b), g(a, b));
    }
    s += "end\ngrouplike g00\n";
    for (a, b) in [(0, 0), (1, 1), (1, 2)] {
        s += &format!("corep d{a}{b}\n  basis v\n  coact v = v@{}\nend\n", g(a, b));
    }
    s
}

/// The source text of a zoo entry.
pub fn source(name: &str) -> Result<String> {
    Ok(match name {
        "TRIVIAL" => TRIVIAL.into(),
        "Z2GROUP" => Z2GROUP.into(),
        "QI" => QI.into(),
        "FUN4" => FUN4.into(),
        "PAULI" => pauli(),
        "TORUS3" => torus3(),
        other => return Err(Error::Input(format!("unknown zoo entry `{other}` (known: {})", NAMES.join(", ")))),
    })
}

pub fn document(name: &str) -> Result<AnyDocument> {
    parse(&source(name)?)
}

/// A structure constant that a mutation may perturb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// Row, column of the multiplication matrix.
    Mul(usize, usize),
    Unit(usize),
    Comul(usize, usize),
    Counit(usize),
    Coaction(usize, usize),
}

/// Slots where adding 1 breaks a unit or counit law, whatever the other
/// constants are: every unit and counit entry, products with a unit basis
/// vector, and comultiplication or coaction terms carrying a leg of nonzero
/// counit.
fn breaking_slots<F: Field>(doc: &Document<F>) -> Vec<Slot> {
    let f = doc.field();
    let a = &doc.p.algebra;
    let c = &doc.p.coalgebra;
    let (np, nc) = (a.dim(), c.dim());
    let counit = c.counit_matrix().row(0);
    let live = |x: usize| !f.is_zero(&counit[x]);
    let mut slots: Vec<Slot> = (0..np).map(Slot::Unit).collect();
    slots.extend((0..nc).map(Slot::Counit));
    let unit = a.unit();
    let unit_basis = (0..np).find(|&t| {
        (0..np).all(|i| if i == t { f.is_one(&unit[i]) } else { f.is_zero(&unit[i]) })
    });
    if let Some(t) = unit_basis {
        for i in 0..np {
            for j in 0..np {
                if i == t || j == t {
                    slots.extend((0..np).map(|r| Slot::Mul(r, i * np + j)));
                }
            }
        }
    }
    for x in 0..nc {
        for r in 0..nc * nc {
            if live(r / nc) || live(r % nc) {
                slots.push(Slot::Comul(r, x));
            }
        }
    }
    for p in 0..np {
        for r in 0..np * nc {
            if live(r % nc) {
                slots.push(Slot::Coaction(r, p));
            }
        }
    }
    slots
}

/// Adds 1 to one seeded structure constant and returns the mutated document
/// with a description of the changed slot. Only constants pinned down by a
/// unit or counit law are drawn, so the result never satisfies the axioms.
pub fn mutate<F: Field>(doc: &Document<F>, seed: u64) -> Result<(Document<F>, String)> {
    let f = doc.field();
    let a = &doc.p.algebra;
    let c = &doc.p.coalgebra;
    let (np, nc) = (a.dim(), c.dim());
    let (pa, ca) = (a.space(), c.space());
    let slots = breaking_slots(doc);
    let slot = slots[seeded_rng(seed).random_range(0..slots.len())];
    let bump = |x: &F::Elem| f.add(x, &f.one());
    let bump_entry = |m: &mut Matrix<F::Elem>, row: usize, col: usize| {
        let v = bump(m.get(row, col));
        m.set(row, col, v);
    };
    let mut mul = a.mul_matrix().clone();
    let mut unit = a.unit().to_vec();
    let mut comul = c.comul_matrix().clone();
    let mut counit = c.counit_matrix().row(0);
    let mut coaction = doc.p.coaction.clone();
    let what = match slot {
        Slot::Mul(r, col) => {
            bump_entry(&mut mul, r, col);
            format!("mul {} {}: coefficient of {}", pa.label(col / np), pa.label(col % np), pa.label(r))
        }
        Slot::Unit(k) => {
            unit[k] = bump(&unit[k]);
            format!("unit: coefficient of {}", pa.label(k))
        }
        Slot::Comul(r, col) => {
            bump_entry(&mut comul, r, col);
            format!("comul {}: coefficient of {}@{}", ca.label(col), ca.label(r / nc), ca.label(r % nc))
        }
        Slot::Counit(k) => {
            counit[k] = bump(&counit[k]);
            format!("counit {}", ca.label(k))
        }
        Slot::Coaction(r, col) => {
            bump_entry(&mut coaction, r, col);
            format!("coaction {}: coefficient of {}@{}", pa.label(col), pa.label(r / nc), ca.label(r % nc))
        }
    };
    let algebra = StructureAlgebra::new(f.clone(), pa.clone(), mul, unit)?;
    let coalgebra = StructureCoalgebra::new(f.clone(), ca.clone(), comul, counit)?;
    let p = ComoduleAlgebra::new(algebra, coalgebra, coaction)?;
    Ok((Document { p, grouplike: doc.grouplike.clone(), coreps: doc.coreps.clone() }, format!("{what} +1")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::with_document;

    #[test]
    fn six_entries_round_trip_and_validate() {
        for name in NAMES {
            let doc = document(name).unwrap();
            let dumped = doc.dump();
            assert_eq!(parse(&dumped).unwrap().dump(), dumped, "{name}");
            with_document!(&doc, |d| {
                assert!(d.p.validate().is_ok(), "{name}: {:?}", d.p.validate().violations);
                assert!(d.p.coalgebra.is_grouplike(d.require_grouplike().unwrap()), "{name}");
                for phi in &d.coreps {
                    assert!(phi.validate(&d.p.coalgebra).is_ok(), "{name} {}", phi.name);
                }
            });
        }
        assert!(document("NOPE").is_err());
    }

    #[test]
    fn torus_uses_the_cyclotomic_field() {
        assert!(document("TORUS3").unwrap().dump().starts_with("field QZETA 3\n"));
    }

    #[test]
    fn mutations_are_seeded() {
        let crate::format::AnyDocument::Rationals(d) = document("Z2GROUP").unwrap() else { panic!() };
        let (m1, w1) = mutate(&d, 5).unwrap();
        let (m2, w2) = mutate(&d, 5).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(m1.dump(), m2.dump());
        assert_ne!(m1.dump(), d.dump());
    }
}
