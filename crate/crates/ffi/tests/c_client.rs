//! Compiles a C client against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "mustafin.h"

int main(void) {
    MustafinDegeneration *deg = NULL;
    const char *cfg = "d=2\nflag=1\nlattice diag=0,0\nlattice diag=1,0\n";
    if (mustafin_degeneration_new(cfg, &deg) != MUSTAFIN_STATUS_OK) return 1;
    MustafinClassification *cls = NULL;
    if (mustafin_classify(deg, 0, &cls) != MUSTAFIN_STATUS_OK) return 2;
    MustafinCounts c;
    if (mustafin_classification_counts(cls, &c) != MUSTAFIN_STATUS_OK) return 3;
    char *summary = NULL;
    mustafin_classification_summary(cls, &summary);
    printf("%zu %s\n", c.total, summary);
    mustafin_string_free(summary);
    mustafin_classification_free(cls);
    mustafin_degeneration_free(deg);
    if (mustafin_degeneration_new("d=2", &deg) == MUSTAFIN_STATUS_OK) return 4;
    return mustafin_last_error() == NULL ? 5 : 0;
}
"#;

#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let archive = profile_dir.join("libmustafin_ffi.a");
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("client.c");
    std::fs::write(&src, CLIENT).unwrap();
    let bin = work.path().join("client");
    let mut cc = Command::new("cc");
    cc.arg("-std=c99").arg("-Wall").arg("-Werror").arg("-I").arg(manifest.join("include")).arg(&src);
    if !archive.exists() {
        // the archive is only produced by a build of this package's library
        let status = cc.arg("-fsyntax-only").status().unwrap();
        assert!(status.success(), "header does not compile");
        return;
    }
    let status = cc
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to build");
    let out = Command::new(&bin).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "exit {:?}: {stdout}", out.status.code());
    assert!(stdout.starts_with("2 2 components"), "{stdout}");
}
