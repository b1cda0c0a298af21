//! Compiles and runs a C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "fluxlaw.h"

int main(void) {
    FluxlawModel *model = NULL;
    if (fluxlaw_model_burgers(1, &model) != FLUXLAW_STATUS_OK) return 1;
    if (fluxlaw_model_components(model) != 1) return 2;

    double ul = 1.0, ur = 0.0, d = 1.0, flux = 0.0;
    if (fluxlaw_godunov_flux(model, &ul, &ur, &d, &flux) != FLUXLAW_STATUS_OK) return 3;
    if (flux < 0.499999 || flux > 0.500001) return 4;

    FluxlawOracle *oracle = NULL;
    double normal = 1.0;
    if (fluxlaw_oracle_new(model, &normal, 0.0, &ul, &ur, &oracle) != FLUXLAW_STATUS_OK) return 5;

    double value = 0.0, err = 0.0;
    if (fluxlaw_oracle_face_flux(oracle, 0, 0.25, 0.0, 0.0, 1.0,
                                 0.0, 1.0, 1e-10, &value, &err) != FLUXLAW_STATUS_OK) return 6;
    if (value < 0.2499999 || value > 0.2500001) return 7;

    /* Error reporting round-trip. */
    FluxlawModel *bad = NULL;
    if (fluxlaw_model_burgers(9, &bad) == FLUXLAW_STATUS_OK) return 8;
    char message[256];
    fluxlaw_last_error_message(message, sizeof message);
    if (strlen(message) == 0) return 9;

    fluxlaw_oracle_free(oracle);
    fluxlaw_model_free(model);
    printf("godunov=%.3f face_flux=%.6f\n", flux, value);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping the C smoke test");
        return;
    };

    // The staticlib sits next to this test binary's deps dir; `cargo test`
    // alone does not produce it, so build the library target in the same
    // profile as the running test.
    let mut args = vec!["build", "--lib", "-p", "fluxlaw-capi"];
    if !cfg!(debug_assertions) {
        args.push("--release");
    }
    let build = Command::new(env!("CARGO"))
        .args(&args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert!(
        build.status.success(),
        "cargo build failed: {}",
        String::from_utf8_lossy(&build.stderr)
    );
    let test_exe = std::env::current_exe().unwrap();
    let target_dir = test_exe.parent().unwrap().parent().unwrap().to_path_buf();
    let staticlib = target_dir.join("libfluxlaw_capi.a");
    assert!(staticlib.is_file(), "missing {staticlib:?}");

    let include_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = std::env::temp_dir().join(format!("fluxlaw-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let source = work.join("smoke.c");
    std::fs::write(&source, C_SOURCE).unwrap();
    let program = work.join("smoke");

    let compile = Command::new(cc)
        .arg(&source)
        .arg(&staticlib)
        .arg("-I")
        .arg(&include_dir)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&program)
        .output()
        .unwrap();
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&program).output().unwrap();
    assert!(
        run.status.success(),
        "smoke test exited with {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("face_flux=0.250000"), "{stdout}");
    std::fs::remove_dir_all(&work).ok();
}

fn which_cc() -> Result<String, ()> {
    for candidate in ["cc", "gcc", "clang"] {
        if Command::new(candidate)
            .arg("--version")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
        {
            return Ok(candidate.to_string());
        }
    }
    Err(())
}
