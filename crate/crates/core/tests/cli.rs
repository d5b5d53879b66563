use std::process::{Command, Output};

fn numsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numsemi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn invariants_line() {
    let o = numsemi(&["invariants", "--gens", "3,5,8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "gens=3,5,8 F=7 g=4 e=2 min_gens=3,5 wilf=ok");
    let o = numsemi(&["invariants", "--gens", "6,9,20"]);
    assert!(stdout(&o).contains("F=43 g=22 e=3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(numsemi(&["invariants", "--gens", "4,6"]).status.code(), Some(2));
    assert_eq!(numsemi(&["invariants", "--gens", "0,3"]).status.code(), Some(2));
    assert_eq!(numsemi(&["sample", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(numsemi(&["sweep", "--p-list", "0.1", "--M", "lots"]).status.code(), Some(2));
    assert_eq!(numsemi(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = numsemi(&[
            "sweep", "--p-list", "0.2,0.1,0.05", "--trials", "200", "--seed", "5", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let data: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(data[0].starts_with("p,trials,mean_F"));
    assert_eq!(data.len(), 4);
    assert!(data[1].starts_with("0.2,200,"));
}

#[test]
fn sample_and_bounds() {
    let o = numsemi(&["sample", "--p", "0.1", "--seed", "1", "--trial", "2"]);
    let line = stdout(&o);
    assert!(line.starts_with("gens=") && line.contains("stop_index="));
    assert_eq!(stdout(&numsemi(&["sample", "--p", "0.1", "--seed", "1", "--trial", "2"])), line);

    let o = numsemi(&["bounds", "--p", "0.5"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "e_upper=3.5"));
}

#[test]
fn sumset_report() {
    let o = numsemi(&["sumset", "--q", "101", "--b", "3", "--trials", "50", "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("q=101 b=3 s=40 k=20 trials=50"));
    assert_eq!(numsemi(&["sumset", "--q", "100", "--b", "3"]).status.code(), Some(2));
}
