use shlin::bounds::{default_snapshot, SNAPSHOT_ENV};

// Environment variables are process-wide, so this is the only test here.
#[test]
fn env_var_overrides_bundled_snapshot() {
    let bundled = default_snapshot().unwrap();
    assert!(bundled.len() > 100);
    let path = std::env::temp_dir().join(format!("shlin-env-{}.csv", std::process::id()));
    std::fs::write(&path, "2,5,1,5,5\n").unwrap();
    std::env::set_var(SNAPSHOT_ENV, &path);
    let custom = default_snapshot().unwrap();
    std::env::remove_var(SNAPSHOT_ENV);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(custom.len(), 1);
    assert_eq!(custom[0].to_string(), "2,5,1,5,5");
}
