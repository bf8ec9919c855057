//! Compile and run a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let dir = target_dir();
    let lib = [dir.join("libcherlab_ffi.a"), dir.join("deps").join("libcherlab_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .unwrap_or_else(|| panic!("static library missing under {}", dir.display()));
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("smoke.c");
    let out = std::env::temp_dir().join(format!("cherlab_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&out)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let run = Command::new(&out).output().expect("smoke binary runs");
    let _ = std::fs::remove_file(&out);
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "smoke failed:\n{stdout}\n{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(stdout.trim(), "order=6 a=1,0,1,0,1 density=-1 * th * hbar^0 error=3");
}
