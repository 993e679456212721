use std::path::PathBuf;
use std::process::Command;

use dixon_complex::formats::{facets_to_string, read_facets};
use dixon_complex::genfun::{series_p, series_xy};
use dixon_complex::{boundary_matrix, enumerate_facets, ComplexParams, DEFAULT_FACE_BUDGET};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn dixon(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_dixon")).args(args).output().unwrap();
    assert!(out.status.success(), "dixon {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const FACET_FILES: [(usize, u32); 5] = [(3, 1), (3, 2), (3, 3), (3, 4), (2, 4)];

#[test]
fn facet_lists_match_library() {
    for (p, n) in FACET_FILES {
        let params = ComplexParams::new(p, n).unwrap();
        let facets = enumerate_facets(&params, DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(facets_to_string(&params, &facets), golden(&format!("facets_p{p}_n{n}.txt")));
    }
}

#[test]
fn facet_lists_match_cli() {
    for (p, n) in FACET_FILES {
        let text = dixon(&["export", "facets", "--p", &p.to_string(), "--n", &n.to_string()]);
        assert_eq!(text, golden(&format!("facets_p{p}_n{n}.txt")));
    }
}

#[test]
fn facet_lists_round_trip() {
    for (p, n) in FACET_FILES {
        let text = golden(&format!("facets_p{p}_n{n}.txt"));
        let (params, facets) = read_facets(&text).unwrap();
        assert_eq!((params.p(), params.n()), (p, n));
        assert_eq!(facets_to_string(&params, &facets), text);
    }
}

#[test]
fn facet_counts_of_delta() {
    let counts: Vec<usize> =
        (1..=4).map(|n| read_facets(&golden(&format!("facets_p3_n{n}.txt"))).unwrap().1.len()).collect();
    assert_eq!(counts, [1, 7, 37, 217]);
}

#[test]
fn series_dumps() {
    assert_eq!(series_p(6).unwrap().dump(), golden("series_P_T6.txt"));
    assert_eq!(series_xy(6).unwrap().dump(), golden("series_XY_T6.txt"));
    assert_eq!(dixon(&["genfun", "P", "--truncate", "6", "--format", "text"]), golden("series_P_T6.txt"));
    assert_eq!(dixon(&["genfun", "XY", "--truncate", "6", "--format", "text"]), golden("series_XY_T6.txt"));
}

#[test]
fn boundary_triplets() {
    let params = ComplexParams::delta(2).unwrap();
    let mut buf = Vec::new();
    boundary_matrix(&params, 1, DEFAULT_FACE_BUDGET).unwrap().write_triplets(&mut buf).unwrap();
    let expected = golden("boundary_p3_n2_k1.txt");
    assert_eq!(String::from_utf8(buf).unwrap(), expected);
    assert_eq!(dixon(&["export", "matrix", "--n", "2", "--k", "1"]), expected);
}
