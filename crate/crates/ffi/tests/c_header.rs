//! Compiles and runs a small C program against the generated header and
//! the static library. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "hecke_baxter.h"

int main(void) {
    double gamma[2] = {0.3, -0.7};
    uint8_t eps[2] = {0, 1};
    HbParams *p = NULL;
    if (hb_params_new(2, 3.0, 0.5, 1.0, gamma, eps, &p) != HB_STATUS_OK) return 10;
    HbComplex l;
    if (hb_l_factor(p, &l) != HB_STATUS_OK) return 11;
    if (fabs(l.re - 0.75858099535498101) > 1e-12 || fabs(l.im - 0.21113837341582912) > 1e-12) return 12;
    double g[4] = {1.0, 2.0, 3.0, 4.0};
    double dw = 0.0;
    if (hb_delta_w(2, g, &dw) != HB_STATUS_OK || fabs(dw - 9.0) > 1e-14) return 13;
    if (hb_delta_w(2, NULL, &dw) != HB_STATUS_NULL_POINTER) return 14;
    char msg[64];
    hb_last_error_message(msg, sizeof msg);
    printf("%s %s\n", hb_version(), msg);
    hb_params_free(p);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn has_compiler() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn c_program_links_and_runs() {
    if !has_compiler() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let lib = target_dir().join("libhecke_baxter_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), format!("{} null pointer: g", env!("CARGO_PKG_VERSION")));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hecke_baxter.h")).unwrap();
    for name in [
        "hb_version",
        "hb_last_error_message",
        "hb_params_new",
        "hb_params_free",
        "hb_params_dim",
        "hb_l_factor",
        "hb_delta_w",
        "hb_minor",
        "hb_iwasawa",
        "hb_cartan",
        "hb_epsilon_spherical",
        "hb_convolve_vector",
        "hb_eigenvalue_estimate",
        "typedef struct HbParams HbParams",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
