use std::io::Write;

use definability_core::digits::DigitStream;
use definability_core::rational;
use definability_forge::{run, Outcome, SharedDigitStream};

fn forge(args: &[&str]) -> Outcome {
    run(std::iter::once("definability-forge").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = forge(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn instruction_rows() {
    let out = ok(&["instructions", "--generators", "add,mul,nat", "--count", "16"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0], "1,0,0,0,3");
    assert_eq!(rows[3], "4,1,1,0,3");
    assert_eq!(rows[15], "16,5,2,0,2");
    let csv = ok(&["instructions", "--generators", "add,mul,nat", "--count", "2", "--format", "csv"]);
    assert_eq!(csv, "k,opcode,a,b,arity\n1,0,0,0,3\n2,0,0,0,3\n");
}

#[test]
fn enumeration_and_boundaries() {
    let out = ok(&["enumerate", "--generators", "add,mul,nat", "--count", "16"]);
    assert_eq!(out.lines().nth(13), Some("14 (lift (base nat))"));
    assert_eq!(out.lines().nth(6), Some("7 (union (base add) (base mul))"));
    assert_eq!(ok(&["boundaries", "--generators", "add,mul,nat", "--blocks", "2"]), "3\n16\n");
    assert_eq!(ok(&["boundaries", "--generators", "add", "--blocks", "2"]), "1\n6\n");
}

#[test]
fn formulas() {
    assert_eq!(ok(&["describe", "--formula", "x>0 and x*x=2"]), "point poly=\"x^2-2\" in (1,2)\n");
    assert_eq!(ok(&["describe", "--formula", "x*x < 0"]), "empty\n");
    assert_eq!(ok(&["decide", "--formula", "forall x y . (x <= y) iff exists z . x + z^2 = y"]), "true\n");
    assert_eq!(ok(&["decide", "--formula", "exists x . x*x = -1"]), "false\n");
    let e = forge(&["decide", "--formula", "x > 0"]);
    assert_eq!(e.code, 1);
    assert!(e.stderr.contains("NotClosed"));
    let e = forge(&["decide", "--formula", "x >"]);
    assert_eq!(e.code, 1);
    assert!(e.stderr.contains("SyntaxError"));
    let g = ok(&["eliminate", "--formula", "exists z . x + z^2 = y"]);
    assert!(!g.contains("exists"), "{g}");
}

#[test]
fn digits_and_codec() {
    assert_eq!(ok(&["digits", "--value", "21/1100", "--count", "6"]), "019090\n");
    assert_eq!(ok(&["digits", "--value", "1/2", "--count", "4"]), "5000\n");
    let long = ok(&["digits", "--value", "1/7", "--count", "120"]);
    let widths: Vec<usize> = long.lines().map(str::len).collect();
    assert_eq!(widths, vec![50, 50, 20]);
    let e = forge(&["digits", "--value", "3/2", "--count", "4"]);
    assert_eq!((e.code, e.stderr.contains("OutOfRange")), (1, true));
    assert_eq!(ok(&["interleave", "--value", "1/2", "--value", "1/2"]), "11/20\n");
    assert_eq!(ok(&["interleave", "--value", "1/2", "--value", "1/2", "--count", "4"]), "5500\n");
    assert_eq!(ok(&["deinterleave", "--value", "11/20", "--length", "2"]), "[1/2, 1/2]\n");
    assert_eq!(ok(&["deinterleave", "--value", "21/1100", "--length", "2"]), "empty\n");
    let z = ok(&["interleave", "--encode", "--value", "-3", "--value", "5/7"]);
    let back = ok(&["deinterleave", "--decode", "--value", z.trim(), "--length", "2"]);
    assert_eq!(back, "[-3, 5/7]\n");
    assert_eq!(forge(&["interleave", "--value", "alg poly=\"x^2-2\" interval=(1,2)"]).code, 2);
}

#[test]
fn diagonal_output() {
    let out = ok(&["diagonal", "--count", "5"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("0.77777"));
    assert_eq!(lines.nth(3), Some("n=4 x_n=alg poly=\"x^2-2\" interval=(1,2) digit(x_n)=2 alpha=7 (listed)"));
    let e = ok(&["diagonal", "--generators", "add,mul", "--count", "13", "--format", "csv"]);
    assert_eq!(e.lines().count(), 14);
    assert!(e.lines().skip(1).all(|l| l.ends_with(",0,7")), "{e}");
    let nat = forge(&["diagonal", "--generators", "add,mul,nat", "--count", "3"]);
    assert_eq!((nat.code, nat.stderr.contains("NonSemialgebraic")), (1, true));
}

#[test]
fn overtake_from_table() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# x_ij = i + j").unwrap();
    for i in 1..=4 {
        let row: Vec<String> = (1..=4).map(|j| (i + j).to_string()).collect();
        writeln!(f, "{}", row.join(",")).unwrap();
    }
    let path = f.path().to_str().unwrap();
    assert_eq!(ok(&["overtake", "--table", path, "--count", "3"]), "3\n6\n9\n");
    assert_eq!(ok(&["overtake", "--table", path, "--format", "csv"]), "n,y\n1,3\n2,6\n3,9\n4,12\n");
    let e = forge(&["overtake", "--table", path, "--count", "9"]);
    assert_eq!((e.code, e.stderr.contains("OutOfRange")), (1, true));
    let missing = forge(&["overtake", "--table", "/nonexistent/table.csv"]);
    assert_eq!((missing.code, missing.stderr.contains("IoError")), (1, true));
}

#[test]
fn bridge_both_ways() {
    assert_eq!(ok(&["bridge", "--indices", "1,3,9,27", "--count", "10"]), "1010000010\n");
    assert_eq!(ok(&["bridge", "--digits", "1010000010", "--count", "3"]), "1,3,9\n");
    assert_eq!(ok(&["bridge", "--indices", "2", "--count", "4", "--finite"]), "0100\n");
    let e = forge(&["bridge", "--indices", "1,3", "--count", "10"]);
    assert_eq!((e.code, e.stderr.contains("InsufficientIndices")), (1, true));
    let e = forge(&["bridge", "--digits", "0010", "--count", "2"]);
    assert_eq!((e.code, e.stderr.contains("SearchBoundExceeded")), (1, true));
    assert_eq!(forge(&["bridge", "--count", "3"]).code, 2);
}

#[test]
fn omega_modes() {
    let cubes = "x^3 + y^3 + z^3 - N";
    assert_eq!(ok(&["omega", "--poly", cubes, "--param-N", "29", "--count", "4"]), "1 x=3 y=1 z=1\n");
    assert_eq!(ok(&["omega", "--poly", cubes, "--param-N", "29", "--count", "3"]), "0\n");
    assert_eq!(ok(&["omega", "--poly", cubes, "--count", "4"]), "1/2^3\n");
    assert_eq!(ok(&["omega", "--poly", cubes, "--param-N", "29", "--cap", "10"]), "4\n");
    assert_eq!(ok(&["omega", "--poly", cubes, "--param-N", "33", "--cap", "30"]), "none\n");
    assert_eq!(forge(&["omega", "--poly", cubes]).code, 2);
}

#[test]
fn usage_errors() {
    let e = forge(&["instructions", "--generators", "add,foo", "--count", "3"]);
    assert_eq!(e.code, 2);
    assert!(e.stderr.contains("--generators"), "{}", e.stderr);
    let e = forge(&["digits", "--value", "1/2", "--count", "many"]);
    assert_eq!(e.code, 2);
    assert!(e.stderr.contains("--count"));
    assert_eq!(forge(&["frobnicate"]).code, 2);
    assert_eq!(forge(&["--help"]).code, 0);
}

#[test]
fn deterministic_output() {
    let args = ["enumerate", "--generators", "add,mul", "--count", "116", "--format", "csv"];
    assert_eq!(forge(&args), forge(&args));
    let args = ["diagonal", "--generators", "add,mul", "--count", "40"];
    assert_eq!(forge(&args), forge(&args));
}

#[test]
fn shared_stream_across_threads() {
    let q = rational::parse("1/7").unwrap();
    let s = SharedDigitStream::new(DigitStream::rational(&q).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|t| {
            let s = s.clone();
            std::thread::spawn(move || (1..=60u64).map(|n| s.digit(n + t)).collect::<Vec<u8>>())
        })
        .collect();
    let cycle = [1u8, 4, 2, 8, 5, 7];
    for (t, h) in handles.into_iter().enumerate() {
        let ds = h.join().unwrap();
        for (i, d) in ds.iter().enumerate() {
            assert_eq!(*d, cycle[(i + t) % 6]);
        }
    }
    assert_eq!(s.prefix(6), cycle);
}
