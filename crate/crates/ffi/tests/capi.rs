use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use shelflab_ffi::*;

fn last_error() -> String {
    let p = shelflab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    shelflab_string_free(p);
    s
}

#[test]
fn magma_round_trip_and_homology() {
    // Dihedral quandle of order 3.
    let text = CString::new("3\n0 2 1\n2 1 0\n1 0 2\n").unwrap();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            shelflab_magma_from_cay(text.as_ptr(), &mut m),
            ShelflabStatus::Ok
        );
        assert!(shelflab_last_error().is_null());
        assert_eq!(shelflab_magma_order(m), 3);

        let mut v = 0;
        assert_eq!(shelflab_magma_op(m, 0, 1, &mut v), ShelflabStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(
            shelflab_magma_op(m, 3, 0, &mut v),
            ShelflabStatus::InvalidArgument
        );

        let mut shelf = false;
        assert_eq!(shelflab_magma_is_shelf(m, &mut shelf), ShelflabStatus::Ok);
        assert!(shelf);

        let mut json = ptr::null_mut();
        assert_eq!(shelflab_magma_axioms_json(m, &mut json), ShelflabStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(report["quandle"], true);

        let mut cay = ptr::null_mut();
        assert_eq!(shelflab_magma_to_cay(m, &mut cay), ShelflabStatus::Ok);
        assert_eq!(take_string(cay), "3\n0 2 1\n2 1 0\n1 0 2\n");

        let mut rank = usize::MAX;
        let mut torsion = ptr::null_mut();
        assert_eq!(
            shelflab_homology(m, ShelflabTheory::OneTerm, 0, true, &mut rank, &mut torsion),
            ShelflabStatus::Ok
        );
        assert_eq!(rank, 0);
        assert_eq!(take_string(torsion), "[]");
        assert_eq!(
            shelflab_homology(m, ShelflabTheory::TwoTerm, 0, true, &mut rank, &mut torsion),
            ShelflabStatus::InvalidArgument
        );
        assert!(last_error().contains("one-term"));
        shelflab_magma_free(m);
    }
}

#[test]
fn from_table_and_errors() {
    let sum_mod_2 = [0u32, 1, 1, 0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            shelflab_magma_from_table(2, sum_mod_2.as_ptr(), &mut m),
            ShelflabStatus::Ok
        );
        let mut rank = 0;
        let mut torsion = ptr::null_mut();
        assert_eq!(
            shelflab_homology(
                m,
                ShelflabTheory::OneTerm,
                1,
                false,
                &mut rank,
                &mut torsion
            ),
            ShelflabStatus::NotShelf
        );
        assert!(torsion.is_null());
        shelflab_magma_free(m);

        let bad = [0u32, 2, 1, 0];
        let mut m = ptr::null_mut();
        assert_eq!(
            shelflab_magma_from_table(2, bad.as_ptr(), &mut m),
            ShelflabStatus::InvalidArgument
        );
        assert!(m.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            shelflab_magma_from_cay(ptr::null(), &mut m),
            ShelflabStatus::NullPointer
        );
        let junk = CString::new("2\n0 x\n").unwrap();
        assert_eq!(
            shelflab_magma_from_cay(junk.as_ptr(), &mut m),
            ShelflabStatus::InvalidArgument
        );
        assert_eq!(shelflab_magma_order(ptr::null()), 0);
        shelflab_magma_free(ptr::null_mut());
        shelflab_string_free(ptr::null_mut());
    }
}

#[test]
fn free_tables() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(
            shelflab_free_table_build(ShelflabFreeKind::Fus, 2, 0, &mut t),
            ShelflabStatus::Ok
        );
        assert_eq!(shelflab_free_table_len(t), 5);
        let mut s = ptr::null_mut();
        assert_eq!(
            shelflab_free_table_element(t, 0, &mut s),
            ShelflabStatus::Ok
        );
        assert_eq!(take_string(s), "");
        assert_eq!(
            shelflab_free_table_element(t, 5, &mut s),
            ShelflabStatus::InvalidArgument
        );

        let mut m = ptr::null_mut();
        assert_eq!(shelflab_free_table_magma(t, &mut m), ShelflabStatus::Ok);
        assert_eq!(shelflab_magma_order(m), 5);
        let mut shelf = false;
        shelflab_magma_is_shelf(m, &mut shelf);
        assert!(shelf);
        shelflab_magma_free(m);
        shelflab_free_table_free(t);

        let mut fas = ptr::null_mut();
        assert_eq!(
            shelflab_free_table_build(ShelflabFreeKind::Fas, 2, 8, &mut fas),
            ShelflabStatus::Ok
        );
        assert_eq!(shelflab_free_table_len(fas), 18);
        shelflab_free_table_free(fas);

        assert_eq!(
            shelflab_free_table_build(ShelflabFreeKind::Fas, 2, 2, &mut fas),
            ShelflabStatus::InvalidArgument
        );
    }
}

#[test]
fn laver() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(shelflab_laver_build(3, &mut t), ShelflabStatus::Ok);
        assert_eq!(shelflab_laver_size(t), 8);
        let mut v = 0;
        assert_eq!(shelflab_laver_get(t, 1, 1, &mut v), ShelflabStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(shelflab_laver_get(t, 8, 5, &mut v), ShelflabStatus::Ok);
        assert_eq!(v, 5);
        assert_eq!(
            shelflab_laver_get(t, 0, 1, &mut v),
            ShelflabStatus::InvalidArgument
        );
        let mut m = ptr::null_mut();
        assert_eq!(shelflab_laver_magma(t, &mut m), ShelflabStatus::Ok);
        assert_eq!(shelflab_magma_order(m), 8);
        shelflab_magma_free(m);
        shelflab_laver_free(t);

        assert_eq!(
            shelflab_laver_build(40, &mut t),
            ShelflabStatus::BoundExceeded
        );
    }
    let v = unsafe { CStr::from_ptr(shelflab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_and_links() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/shelflab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "shelflab_last_error",
        "shelflab_magma_from_cay",
        "shelflab_homology",
        "shelflab_free_table_build",
        "shelflab_laver_get",
        "typedef struct ShelflabMagma ShelflabMagma;",
        "SHELFLAB_STATUS_NOT_SHELF = 4",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"shelflab.h\"\n\
         int main(void) {\n\
           ShelflabMagma *m = NULL;\n\
           size_t rank = 0; char *torsion = NULL;\n\
           if (shelflab_magma_from_cay(\"1\\n0\\n\", &m) != SHELFLAB_STATUS_OK) return 1;\n\
           ShelflabStatus s = shelflab_homology(m, SHELFLAB_THEORY_ONE_TERM, 0, false, &rank, &torsion);\n\
           shelflab_string_free(torsion);\n\
           shelflab_magma_free(m);\n\
           return s == SHELFLAB_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let mut cmd = Command::new(&cc);
    cmd.args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src);
    // The staticlib sits next to the test binary's deps directory when cargo built it.
    let staticlib = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(Path::parent)
        .map(|d| d.join("libshelflab_ffi.a"))
        .filter(|p| p.exists());
    let exe = dir.path().join("use");
    match &staticlib {
        Some(lib) => {
            cmd.arg(lib)
                .args(["-lpthread", "-ldl", "-lm", "-o"])
                .arg(&exe);
        }
        None => {
            cmd.arg("-fsyntax-only");
        }
    }
    match cmd.status() {
        Ok(s) => assert!(s.success(), "{cc} rejected the header"),
        Err(e) => {
            eprintln!("skipping C compile: {cc} unavailable ({e})");
            return;
        }
    }
    if staticlib.is_some() {
        let run = Command::new(&exe).status().unwrap();
        assert!(run.success(), "C program failed: {run}");
    }
}
