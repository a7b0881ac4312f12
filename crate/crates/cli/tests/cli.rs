use std::path::Path;
use std::process::{Command, Output};

fn lottery(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lottery"));
    cmd.args(args).env_remove("LOTTERY_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("LOTTERY_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sorted_blocks(text: &str) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut b: Vec<usize> = l.split_whitespace().map(|w| w.parse().unwrap()).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    blocks
}

#[test]
fn bounds_table_and_exit_codes() {
    let o = lottery(&["bounds", "--min", "45", "--max", "48"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("  n   L status"));
    let values: Vec<(usize, usize)> = rows[1..]
        .iter()
        .map(|r| {
            let w: Vec<&str> = r.split_whitespace().collect();
            assert_eq!(w[2], "proved");
            (w[0].parse().unwrap(), w[1].parse().unwrap())
        })
        .collect();
    assert_eq!(values, vec![(45, 15), (46, 16), (47, 17), (48, 18)]);

    assert_eq!(lottery(&["bounds", "--min", "10", "--max", "9"], None).status.code(), Some(64));
    assert_eq!(lottery(&["bounds", "--min", "5", "--max", "9"], None).status.code(), Some(64));
    assert_eq!(lottery(&["bounds"], None).status.code(), Some(64));
    assert_eq!(lottery(&["--threads", "0", "bounds", "--min", "40", "--max", "40"], None).status.code(), Some(64));
}

#[test]
fn bounds_outside_the_range_are_conjectured() {
    let o = lottery(&["bounds", "--min", "70", "--max", "71", "--json"], None);
    assert_eq!(o.status.code(), Some(2));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["L"], 35);
    assert_eq!(lines[0]["status"], "proved");
    assert_eq!(lines[1]["status"], "conjectured");
    assert!(lines[0].get("runtimeMs").is_none());
}

#[test]
fn bounds_output_does_not_depend_on_threads() {
    let args = ["bounds", "--min", "32", "--max", "50", "--json"];
    let one = lottery(&[&["--threads", "1"][..], &args[..]].concat(), None);
    let default = lottery(&args, None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn tickets_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = lottery(&["tickets", "--n", "59"], None);
    assert_eq!(o.status.code(), Some(0));
    let published = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/tickets_n59.txt"),
    )
    .unwrap();
    assert_eq!(sorted_blocks(&stdout(&o)), sorted_blocks(&published));

    let file = dir.path().join("t70.txt");
    let o = lottery(&["tickets", "--n", "70", "--out", file.to_str().unwrap()], None);
    assert_eq!(stdout(&o).trim(), "35");
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text.lines().filter(|l| !l.trim().is_empty()).count(), 35);

    let o = lottery(&["verify", "--n", "70", file.to_str().unwrap()], None);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "valid"));

    let short: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    let cut = dir.path().join("cut.txt");
    std::fs::write(&cut, short).unwrap();
    let o = lottery(&["verify", "--n", "70", "--method", "clique", cut.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("invalid: draw "));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2 3 4 5\n").unwrap();
    assert_eq!(lottery(&["verify", "--n", "70", bad.to_str().unwrap()], None).status.code(), Some(65));
    let missing = dir.path().join("missing.txt");
    assert_eq!(lottery(&["verify", "--n", "70", missing.to_str().unwrap()], None).status.code(), Some(1));
}

#[test]
fn tickets_with_labels() {
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("labels.txt");
    let perm: Vec<String> = (1..=40).rev().map(|x| x.to_string()).collect();
    std::fs::write(&labels, perm.join(" ")).unwrap();
    let plain = stdout(&lottery(&["tickets", "--n", "40"], None));
    let o = lottery(&["tickets", "--n", "40", "--labels", labels.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let flipped: String = plain
        .lines()
        .map(|l| {
            let w: Vec<String> = l.split_whitespace().map(|x| (41 - x.parse::<usize>().unwrap()).to_string()).collect();
            w.join(" ") + "\n"
        })
        .collect();
    assert_eq!(sorted_blocks(&stdout(&o)), sorted_blocks(&flipped));

    std::fs::write(&labels, "1 1 2").unwrap();
    assert_eq!(
        lottery(&["tickets", "--n", "40", "--labels", labels.to_str().unwrap()], None).status.code(),
        Some(65)
    );
    assert_eq!(lottery(&["tickets", "--n", "20"], None).status.code(), Some(64));
}

#[test]
fn toe_table_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = lottery(&["toe-table"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("provenance computed"));
    let values: Vec<usize> = text.lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values, vec![0, 0, 0, 0, 0, 0, 0, 2, 3, 7, 10, 11, 12]);

    let again = stdout(&lottery(&["toe-table"], Some(dir.path())));
    assert_eq!(again.lines().next(), Some("provenance cached"));
    assert_eq!(again.lines().skip(1).collect::<Vec<_>>(), text.lines().skip(1).collect::<Vec<_>>());

    let path = stdout(&lottery(&["cache", "path"], Some(dir.path())));
    assert!(Path::new(path.trim()).exists());
    assert_eq!(lottery(&["cache", "clear"], Some(dir.path())).status.code(), Some(0));
    assert!(!Path::new(path.trim()).exists());
    assert_eq!(lottery(&["cache", "path"], None).status.code(), Some(64));
    assert_eq!(lottery(&["toe-table", "--max-f", "16"], None).status.code(), Some(64));
}
