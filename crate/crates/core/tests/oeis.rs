use std::fs;

use beck_core::enumeration::count_class;
use beck_core::oeis::{cached, crosscheck, lookup_offline, parse_bfile, MatchStatus, Source};
use beck_core::{ClassSpec, Error, Family};

#[test]
fn cache_directory_is_consulted_after_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    assert!(lookup_offline("A265251", Some(dir.path())).unwrap().is_none());
    fs::write(dir.path().join("b265251.txt"), "# cached\n1 1\n2 0\n3 2\n").unwrap();
    let r = lookup_offline("A265251", Some(dir.path())).unwrap().unwrap();
    assert!(matches!(r.source, Source::Cache(_)));
    assert_eq!(r.bfile.values, [1, 0, 2]);

    // bundled fixtures win over a cache entry
    fs::write(dir.path().join("b090867.txt"), "0 99\n").unwrap();
    let r = lookup_offline("A090867", Some(dir.path())).unwrap().unwrap();
    assert_eq!(r.source, Source::Bundled);
}

#[test]
fn malformed_cache_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b000041.txt"), "0 1\n1 one\n").unwrap();
    assert!(matches!(cached("A000041", dir.path()), Err(Error::BFile { line: 2, .. })));
}

#[test]
fn partition_numbers_against_a_cached_reference() {
    let dir = tempfile::tempdir().unwrap();
    let text = "1 1\n2 2\n3 3\n4 5\n5 7\n6 11\n7 15\n";
    fs::write(dir.path().join("b000041.txt"), text).unwrap();
    let reference = lookup_offline("A000041", Some(dir.path())).unwrap();
    let computed: Vec<i128> = (0..=7).map(|n| beck_core::enumeration::count_partitions(n).unwrap() as i128).collect();
    let rep = crosscheck("A000041", &computed, 0, reference.as_ref()).unwrap();
    // the file has no index 0, so the overlap starts at n = 1
    assert_eq!(rep.status, MatchStatus::Match);
    assert_eq!(rep.shift, 0);
    assert_eq!(rep.prefix_len, 7);
}

#[test]
fn beck_counts_match_fixture() {
    let reference = lookup_offline("A090867", None).unwrap();
    let computed: Vec<i128> =
        (0..=40).map(|n| count_class(n, ClassSpec::exact(Family::O, 2, 1).unwrap()).unwrap() as i128).collect();
    let rep = crosscheck("A090867", &computed, 0, reference.as_ref()).unwrap();
    assert_eq!(rep.status, MatchStatus::Match);
    assert_eq!(rep.prefix_len, 41);
    assert!(parse_bfile(include_str!("../fixtures/oeis/b090867.txt")).unwrap().values.len() > 40);
}
