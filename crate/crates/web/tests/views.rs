use prolate_web::{block_view, spectrum_view, sweep_view};

#[test]
fn spectrum_view_figure_one() {
    let v = spectrum_view(1024, 256, 128, 1e-3).unwrap();
    assert_eq!(v.values().len(), 256);
    assert_eq!(v.cluster_point(), 64.25);
    assert!(v.passed());
    assert!((v.width() as f64) <= v.bound());
}

#[test]
fn spectrum_view_full_square() {
    let v = spectrum_view(16, 16, 3, 1e-3).unwrap();
    assert!(v.bound().is_infinite());
    assert!(v.passed());
}

#[test]
fn sweep_view_shape() {
    let s = sweep_view(512, 1e-6).unwrap();
    assert_eq!(s.ms(), vec![64.0, 128.0, 256.0, 512.0]);
    assert!(s.widths().iter().zip(s.bounds()).all(|(w, b)| *w <= b));
}

#[test]
fn block_view_offsets() {
    let a = block_view(64, 4, 0, 0).unwrap();
    let b = block_view(64, 4, 5, 60).unwrap();
    assert_eq!(a.len(), 16);
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
}

#[test]
fn rejects_bad_input() {
    assert!(block_view(64, 3, 0, 0).is_err());
    assert!(spectrum_view(8192, 64, 10, 1e-3).is_err());
    assert!(spectrum_view(64, 16, 40, 1e-3).is_err());
}
