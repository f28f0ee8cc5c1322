//! Compiles and runs a small C program against the generated header and
//! the static library. Skipped when no C compiler is on the PATH.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include "afl_capi.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    AflPoly *p = afl_poly_new();
    if (afl_orb_rank1_split(3, p) != Ok) return 1;
    char value[64], deriv[256];
    if (afl_poly_special_values(p, 3, value, sizeof value, deriv, sizeof deriv) != Ok) return 2;
    if (strcmp(value, "0") != 0) return 3;
    if (strstr(deriv, "\"3\":\"-2\"") == NULL) return 4;
    afl_poly_free(p);

    bool ok = false;
    if (afl_cm_factor_crosscheck(3, 27, &ok) != Ok || !ok) return 5;

    double ei = 0.0;
    if (afl_exp_integral(-1.0, &ei) != Ok) return 6;
    if (ei > -0.2193 || ei < -0.2194) return 7;

    bool inv = false;
    if (afl_weil_check_invariance(5, 1, 1, 0, -1, &inv) != Ok || !inv) return 8;
    if (afl_weil_check_invariance(3, 1, 0, 0, 1, &inv) != Ok || inv) return 9;
    return 0;
}
"#;

fn find_cc() -> Option<&'static str> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Some(cc);
        }
    }
    None
}

fn target_dir() -> PathBuf {
    // tests live in target/<profile>/deps; the staticlib is one level up
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = include_dir.join("afl_capi.h");
    assert!(header.exists(), "cbindgen header missing at {header:?}");
    let staticlib = target_dir().join("libafl_capi.a");
    assert!(staticlib.exists(), "static library missing at {staticlib:?}");

    let dir = std::env::temp_dir().join(format!("afl-capi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    std::fs::write(&src, C_SOURCE).unwrap();
    let bin = dir.join("smoke");

    let compile = Command::new(cc)
        .arg("-I")
        .arg(&include_dir)
        .arg(&src)
        .arg(&staticlib)
        .arg("-lm")
        .arg("-o")
        .arg(&bin)
        .output()
        .expect("compiler invocation");
    assert!(
        compile.status.success(),
        "compile failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}",
        run.status.code()
    );
}
