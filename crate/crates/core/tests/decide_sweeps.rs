use idcolor::count::{self, BigCount};
use idcolor::decide::{exists, has_identity_coloring, x_of, CaseLabel};

#[test]
fn existence_is_symmetric_in_the_parts() {
    for c in 2..=6 {
        for s in 1..=60 {
            for t in 1..s {
                assert_eq!(exists(c, s, t), exists(c, t, s), "c={c} s={s} t={t}");
            }
        }
    }
}

#[test]
fn complement_duality() {
    // Complementing the row set preserves the part-preserving group, so the
    // verdict must agree whenever neither side is square.
    for c in 2..=4u64 {
        for s in 1..=6u64 {
            let cs = c.pow(s as u32);
            if cs > 5000 {
                continue;
            }
            for t in 1..cs {
                if t == s || cs - t == s {
                    continue;
                }
                assert_eq!(exists(c, s, t), exists(c, s, cs - t), "c={c} s={s} t={t}");
            }
        }
    }
}

#[test]
fn hard_bounds() {
    for c in 2..=5u64 {
        for s in 2..=40u64 {
            let x = x_of(c, s).unwrap();
            for t in 1..=x {
                assert!(!exists(c, s, t), "c={c} s={s} t={t}");
            }
            let cs = count::pow(c, s);
            for back in 0..=x {
                let t = &cs - back;
                assert!(!has_identity_coloring(c, s, &t).unwrap().exists);
            }
            let v = has_identity_coloring(c, s, &(&cs + 5u32)).unwrap();
            assert!(!v.exists);
            assert_eq!(v.case_label, CaseLabel::TooManyRows);
        }
    }
}

#[test]
fn more_colors_never_hurt() {
    for c in 2..=6 {
        for s in 1..=30 {
            for t in 1..=200 {
                if exists(c, s, t) {
                    assert!(exists(c + 1, s, t), "c={c} s={s} t={t}");
                }
            }
        }
    }
}

#[test]
fn recursion_chain_starts_at_query_and_keeps_colors() {
    for c in 2..=4u64 {
        for s in 2..=300u64 {
            let x = x_of(c, s).unwrap();
            let v = has_identity_coloring(c, s, &BigCount::from(x + 1)).unwrap();
            assert_eq!(v.recursion_chain[0].s, s);
            assert_eq!(v.recursion_chain[0].t, BigCount::from(x + 1));
            assert!(v.recursion_chain.iter().all(|q| q.c == c));
            for w in v.recursion_chain.windows(2) {
                assert!(w[1].s < w[0].s);
                assert_eq!(w[1].t, BigCount::from(w[0].s));
            }
        }
    }
}
