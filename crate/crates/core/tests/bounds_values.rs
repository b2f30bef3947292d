mod common;

use shlin::bounds::{
    bmax_log_from, bundled_snapshot, parse_table, revalidate, sh_lower, step_violations, vbar_exact, vbar_series,
    vbar_upper, BoundValue, Provenance, DEFAULT_SEARCH_BUDGET,
};
use shlin::shset::exhaustive_max_sh_set;
use shlin::{Error, Mode};

#[test]
fn small_binary_values() {
    let t = bundled_snapshot();
    for (n, v) in [(5, 4), (8, 6), (19, 9)] {
        let res = vbar_exact(&t, 2, 2, n, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(res.value, BoundValue::Exact(v), "n={n}");
        assert!(revalidate(&res).unwrap());
        assert_eq!(bmax_log_from(&res, n).value, BoundValue::Exact(n - v));
    }
}

#[test]
fn exhaustive_path_for_length_eight() {
    let t = parse_table("2,8,2,5,5\n").unwrap();
    let res = vbar_exact(&t, 2, 2, 8, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(res.value, BoundValue::Exact(6));
    let cert = res
        .provenance
        .iter()
        .find_map(|p| match p {
            Provenance::Exhaustive(c) => Some(c),
            _ => None,
        })
        .expect("an RREF certificate");
    assert_eq!((cert.n, cert.k, cert.d, cert.candidates), (8, 3, 5, 97155));
    assert!(cert.proves_nonexistence());
    // too small a budget leaves an interval
    let open = vbar_exact(&t, 2, 2, 8, 1000).unwrap();
    assert_eq!(open.value, BoundValue::Between(4, 6));
    assert!(open.note.is_some());
}

#[test]
fn search_lowers_a_weak_upper_bound() {
    // only the repetition code is listed; the search finds [8,2,5]
    let t = parse_table("2,8,1,8,8\n").unwrap();
    let res = vbar_exact(&t, 2, 2, 8, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(res.value, BoundValue::Exact(6));
    assert!(revalidate(&res).unwrap());
}

#[test]
fn agrees_with_maximum_set_search() {
    // V̄_2(2,n) is the least r with a maximum S_2-linear set of size >= n+1
    let t = bundled_snapshot();
    let max: Vec<usize> = (4..=5)
        .map(|r| exhaustive_max_sh_set(&common::field(2), r, 2, true, Mode::Linear).unwrap().size)
        .collect();
    assert_eq!(max, vec![6, 7]);
    for n in 5..=6 {
        let r = (4..=5).find(|&r| max[r - 4] > n).unwrap();
        assert_eq!(vbar_exact(&t, 2, 2, n, DEFAULT_SEARCH_BUDGET).unwrap().exact(), Some(r));
    }
}

#[test]
fn tampered_certificate_fails_revalidation() {
    let t = parse_table("2,8,2,5,5\n").unwrap();
    let mut res = vbar_exact(&t, 2, 2, 8, DEFAULT_SEARCH_BUDGET).unwrap();
    for p in &mut res.provenance {
        if let Provenance::Exhaustive(c) = p {
            c.d = 4;
        }
    }
    assert!(!revalidate(&res).unwrap());
}

#[test]
fn lower_bounds_and_sentinel() {
    let t = bundled_snapshot();
    assert_eq!(sh_lower(&t, 2, 9, 2).value, BoundValue::AtLeast(24));
    assert_eq!(sh_lower(&t, 2, 6, 3).value, BoundValue::AtLeast(8));
    assert_eq!(sh_lower(&t, 2, 4, 3).value, BoundValue::X);
    assert_eq!(vbar_upper(&t, 2, 2, 4).unwrap_err().to_string(), "precondition violated: need n > 2h, got n=4, h=2");
    assert_eq!(vbar_upper(&t, 2, 2, 300).unwrap_err(), Error::NoWitness);
}

#[test]
fn series_is_monotone() {
    let t = bundled_snapshot();
    for q in [2, 3, 4] {
        for h in 2..=3 {
            let s = vbar_series(&t, q, h, 2 * h + 1..=40);
            let known: Vec<usize> = s.iter().filter_map(|p| p.1).collect();
            assert!(known.windows(2).all(|w| w[0] <= w[1]), "q={q} h={h}");
            let _ = step_violations(&s);
        }
    }
}

#[test]
fn ingest_reports_positions() {
    let dir = std::env::temp_dir().join(format!("shlin-bounds-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.csv");
    std::fs::write(&path, "# header\n2,5,1,5,5\n2,9,q,3,3\n").unwrap();
    let err = shlin::bounds::ingest_table(&path).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, column: 5, .. }), "{err}");
    assert!(matches!(shlin::bounds::ingest_table(dir.join("missing.csv")), Err(Error::Io(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
