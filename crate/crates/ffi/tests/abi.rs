use std::ffi::{CStr, CString};
use std::ptr;

use cherlab_ffi::*;

const S3: &str = "dim 2\nconductor 1\ngen\n-1; 1\n0; 1\ngen\n1; 0\n1; -1\n";

fn group(text: &str) -> (CherlabStatus, *mut CherlabGroup) {
    let src = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { cherlab_group_from_text(src.as_ptr(), 1000, &mut g) };
    (status, g)
}

fn last_error() -> String {
    let p = cherlab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sizes_and_profile() {
    let (status, g) = group(S3);
    assert_eq!(status, CherlabStatus::Ok);
    let (mut order, mut dim, mut classes) = (0, 0, 0);
    assert_eq!(unsafe { cherlab_group_sizes(g, &mut order, &mut dim, &mut classes) }, CherlabStatus::Ok);
    assert_eq!((order, dim, classes), (6, 2, 3));

    let mut needed = 0;
    let mut small = [0usize; 2];
    assert_eq!(unsafe { cherlab_group_profile(g, small.as_mut_ptr(), 2, &mut needed) }, CherlabStatus::BufferTooSmall);
    assert_eq!(needed, 5);
    let mut buf = [9usize; 5];
    assert_eq!(unsafe { cherlab_group_profile(g, buf.as_mut_ptr(), 5, &mut needed) }, CherlabStatus::Ok);
    assert_eq!(buf, [1, 0, 1, 0, 1]);
    unsafe { cherlab_group_free(g) };
}

#[test]
fn report_string() {
    let (_, g) = group(S3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cherlab_group_report(g, &mut out) }, CherlabStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { cherlab_string_free(out) };
    unsafe { cherlab_group_free(g) };
    for line in ["order=6", "N=3", "N*=3", "degrees=2,3", "h=3", "well_generated=true"] {
        assert!(text.lines().any(|l| l == line), "missing {line} in\n{text}");
    }
}

#[test]
fn errors_are_reported() {
    let (status, g) = group("dim 2\nconductor 1\ngen\n1; 0\n");
    assert_eq!(status, CherlabStatus::MalformedInput);
    assert!(g.is_null());
    assert!(last_error().contains("line 3"));

    let (status, _) = group("dim 1\nconductor 1\ngen\n2\n");
    assert_eq!(status, CherlabStatus::DomainError);
    assert!(last_error().contains("cap"));

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cherlab_group_from_text(ptr::null(), 10, &mut out) }, CherlabStatus::NullArgument);
    assert_eq!(unsafe { cherlab_group_report(ptr::null(), &mut ptr::null_mut()) }, CherlabStatus::NullArgument);

    let (status, g) = group(S3);
    assert_eq!(status, CherlabStatus::Ok);
    assert!(cherlab_last_error().is_null());
    unsafe { cherlab_group_free(g) };
    unsafe { cherlab_group_free(ptr::null_mut()) };
    unsafe { cherlab_string_free(ptr::null_mut()) };
}

fn density(n: usize, l: usize, roots: &str, theta: &str, moments: &str) -> Result<String, CherlabStatus> {
    let (r, t, m) = (CString::new(roots).unwrap(), CString::new(theta).unwrap(), CString::new(moments).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe { cherlab_index_density(n, l, r.as_ptr(), t.as_ptr(), m.as_ptr(), &mut out) };
    if status != CherlabStatus::Ok {
        return Err(status);
    }
    let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { cherlab_string_free(out) };
    Ok(s)
}

#[test]
fn index_density_strings() {
    assert_eq!(density(0, 0, "", "0", "1").unwrap(), "1 * 1 * hbar^0");
    assert_eq!(density(1, 0, "0", "th", "1").unwrap(), "-1 * th * hbar^0");
    assert_eq!(density(2, 0, "t,0", "0", "1").unwrap(), "-1/24 * t^2 * hbar^2");
    assert_eq!(density(1, 0, "0", "3", "1"), Err(CherlabStatus::MalformedInput));
    assert_eq!(density(1, 0, "0", "th", "2"), Err(CherlabStatus::DomainError));
    assert!(last_error().contains("m_0"));
}
