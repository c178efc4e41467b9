use blimwb_core::config::Caps;
use blimwb_core::limits::verify_theorem_at;
use blimwb_core::words::{FreePresentation, Word};

fn w(raw: &[(usize, i64)]) -> Word {
    Word::reduce(raw.iter().copied())
}

fn main() {
    let caps = Caps::default();
    let entries: Vec<(&str, FreePresentation)> = vec![
        ("C2", FreePresentation::new(vec!["x".into()], vec![w(&[(0, 2)])]).unwrap()),
        ("C4", FreePresentation::new(vec!["x".into()], vec![w(&[(0, 4)])]).unwrap()),
        (
            "C2xC2",
            FreePresentation::new(
                vec!["x".into(), "y".into()],
                vec![w(&[(0, 2)]), w(&[(1, 2)]), Word::commutator(&Word::generator(0), &Word::generator(1))],
            )
            .unwrap(),
        ),
        (
            "Q8",
            FreePresentation::new(
                vec!["x".into(), "y".into()],
                vec![w(&[(0, 4)]), w(&[(1, 2), (0, -2)]), w(&[(1, -1), (0, 1), (1, 1), (0, 1)])],
            )
            .unwrap(),
        ),
        (
            "S3",
            FreePresentation::new(
                vec!["x".into(), "y".into()],
                vec![w(&[(0, 3)]), w(&[(1, 2)]), w(&[(0, 1), (1, 1), (0, 1), (1, 1)])],
            )
            .unwrap(),
        ),
    ];
    for (name, p) in &entries {
        let t = std::time::Instant::now();
        match verify_theorem_at(p, 5, &caps, 42) {
            Ok(r) => eprintln!(
                "{name} @ n=5: |G/γ₅| = {}, blim {}, dimq {}, equal {}, incl {}, layers {:?}, {:?}",
                r.colim_order, r.blim.elements.len(), r.dimension_quotient.elements.len(),
                r.equal, r.inclusion, r.layer_ranks, t.elapsed()
            ),
            Err(e) => eprintln!("{name} @ n=5: ERROR {e}"),
        }
    }
}
