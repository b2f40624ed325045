use parahoric::alcove::{sample_grid, LevelOnePoint, TorusData};
use parahoric::coxeter::*;
use parahoric::linalg::{q, qf};
use parahoric::springer::*;
use std::collections::BTreeSet;
use std::sync::Arc;

fn a1() -> Arc<CartanDatum> {
    Arc::new(CartanDatum::new(AffineType::A(1)).unwrap())
}

fn pt(d: &CartanDatum, c: &[(i64, i64)]) -> LevelOnePoint {
    LevelOnePoint::real(d, c.iter().map(|&(a, b)| qf(a, b)).collect()).unwrap()
}

#[test]
fn sl2_principal_and_cuspidal_blocks() {
    let t = springer_table("SL2").unwrap();
    let p = t.lookup("reg", "triv").unwrap();
    assert_eq!((p.block.as_str(), p.irrep.as_str()), ("principal", "triv"));
    let p = t.lookup("1", "triv").unwrap();
    assert_eq!((p.block.as_str(), p.irrep.as_str()), ("principal", "sign"));
    let p = t.lookup("reg", "sgn").unwrap();
    assert_eq!((p.block.as_str(), p.irrep.as_str()), ("cuspidal", "trivial"));
    assert_eq!(t.central["sgn"], qf(1, 2));
    assert!(t.lookup("1", "sgn").is_err());
    t.check_cuspidal(&a1()).unwrap();
}

#[test]
fn torus_table_has_one_pair() {
    let t = springer_table("torus").unwrap();
    assert_eq!(t.pairs.len(), 1);
    assert_eq!(t.lookup("1", "triv").unwrap().irrep, "trivial");
    assert!(matches!(springer_table("E8"), Err(SpringerError::NotCurated(_))));
}

#[test]
fn every_pair_in_one_block() {
    for tag in supported_tags() {
        let t = springer_table(tag).unwrap();
        let total: usize = t.blocks.iter().map(|b| b.irreps.len()).sum();
        assert_eq!(total, t.pairs.len());
        let mut seen = BTreeSet::new();
        for p in &t.pairs {
            assert!(seen.insert((p.class.clone(), p.system.clone())));
            assert_eq!(t.blocks.iter().filter(|b| b.name == p.block).count(), 1);
        }
    }
}

#[test]
fn closure_order() {
    let t = springer_table("SL2").unwrap();
    let one = t.class("1").unwrap().clone();
    let reg = t.class("reg").unwrap().clone();
    assert!(closure_leq(&one, &reg).unwrap());
    assert!(closure_lt(&one, &reg).unwrap());
    assert!(closure_leq(&reg, &reg).unwrap());
    assert!(!closure_lt(&reg, &reg).unwrap());
    assert!(!closure_leq(&reg, &one).unwrap());
    let tor = springer_table("torus").unwrap().class("1").unwrap().clone();
    assert!(matches!(closure_leq(&one, &tor), Err(SpringerError::MixedTags(..))));
}

#[test]
fn table_rejections() {
    let dup = "group X\nclass 1 0 triv\nsystem triv 0\nblock b - 1 triv\nirrep b r\nirrep b s\npair 1 triv b r\n";
    assert!(matches!(SpringerTable::parse(dup), Err(SpringerError::Inconsistent(_))));
    let bad = "group X\nclass 1 0 triv\nwhat\n";
    assert!(matches!(SpringerTable::parse(bad), Err(SpringerError::Parse { line: 3, .. })));
}

#[test]
fn assembled_labels() {
    let d = a1();
    let data = TorusData::new(&d, &nodes(&[])).unwrap();
    let z = assemble_z_label(&data, &pt(&d, &[(1, 2), (1, 2)]), "1", "triv").unwrap();
    assert_eq!(z.class.tag, "torus");
    assert_eq!(z.semisimple.values(), &[qf(3, 4)]);
    let z = assemble_z_label(&data, &pt(&d, &[(1, 1), (0, 1)]), "reg", "triv").unwrap();
    assert_eq!(z.class.tag, "SL2");
    assert_eq!(z.semisimple.order(), 1);
    assert!(assemble_z_label(&data, &pt(&d, &[(1, 1), (0, 1)]), "1", "sgn").is_err());
}

#[test]
fn omega_blocks_match_central_characters() {
    let d = a1();
    let data = TorusData::new(&d, &nodes(&[])).unwrap();
    let x = pt(&d, &[(0, 1), (1, 1)]);
    for (sys, rot) in [("triv", 0), ("sgn", 1)] {
        let z = assemble_z_label(&data, &x, "reg", sys).unwrap();
        let w = z.omega_block(&d).unwrap();
        assert_eq!(w.apply(0), rot);
        assert_eq!(iota(&d, &w).unwrap(), z.central_character().unwrap());
    }
    assert_eq!(iota(&d, &DiagramAutomorphism::identity(2)), Some(q(0)));
}

#[test]
fn labels_injective_on_grid() {
    let d = a1();
    let data = TorusData::new(&d, &nodes(&[])).unwrap();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for p in sample_grid(&d, &nodes(&[]), 6) {
        let tag = if cell_size(&p) == 2 { "torus" } else { "SL2" };
        let t = springer_table(tag).unwrap();
        for pair in &t.pairs {
            let z = assemble_z_label(&data, &p, &pair.class, &pair.system).unwrap();
            assert!(seen.insert(z));
            count += 1;
        }
    }
    assert_eq!(seen.len(), count);
}

fn cell_size(p: &LevelOnePoint) -> usize {
    parahoric::alcove::cell_of(p).unwrap().s.len()
}
