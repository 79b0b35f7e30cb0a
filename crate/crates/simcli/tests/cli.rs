use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use hypercore::text::GraphFile;
use hypercore::{canonical_h5, Vertex};
use playservice::{Config, Service, Status};
use simcli::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-draw"))
        .args(args)
        .env_remove(SEEDS_ENV)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ramsey-draw-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_h5(dir: &Path, z: Option<Vertex>) -> String {
    let h = canonical_h5();
    let text = GraphFile { graph: h.graph, z }.render();
    let path = dir.join("h5.txt");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_certifies_h5() {
    let dir = scratch("verify");
    let path = write_h5(&dir, Some(0));
    let o = bin(&["verify", &path]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict: draw-sufficient\n"));

    let o = bin(&["verify", &path, "--report", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["drawSufficient"], true);

    // vertex 1 has degree 4, so property (i) fails
    let o = bin(&["verify", &path, "--z", "1"]);
    assert_eq!(code(&o), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_needs_a_designated_vertex() {
    let dir = scratch("noz");
    let path = write_h5(&dir, None);
    assert_eq!(code(&bin(&["verify", &path])), 2);
    assert_eq!(code(&bin(&["verify", &path, "--z", "0"])), 0);
    assert_eq!(code(&bin(&["verify", &path, "--z", "77"])), 2);
    assert_eq!(code(&bin(&["verify", "/nonexistent/graph"])), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn restricted_pairs_never_certify() {
    let dir = scratch("pairs");
    let path = write_h5(&dir, Some(0));
    let o = bin(&[
        "verify",
        &path,
        "--pairs",
        "e_r,e_g",
        "--pairs",
        "1-2-3-4-5,2-3-4-5-6",
    ]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("pair ")).count(), 2);
    assert!(out.contains("identity true"));
    for bad in ["e_r", "e_r,e_r", "0-1-2-3-4,e_g", "e_r,nonsense"] {
        assert_eq!(code(&bin(&["verify", &path, "--pairs", bad])), 2, "{bad}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn simulate_then_replay() {
    let dir = scratch("sim");
    let out = dir.join("g.jsonl");
    let out = out.to_str().unwrap();
    let o = bin(&[
        "simulate",
        "--adversary",
        "standard-chain",
        "--seed",
        "5",
        "--horizon",
        "120",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(
        text,
        run_game("standard-chain", 120, 5)
            .unwrap()
            .transcript
            .to_jsonl()
    );
    let o = bin(&["replay", out]);
    assert_eq!(code(&o), 0);

    let tampered = text.replacen("\"FP\"", "\"SP\"", 1);
    std::fs::write(out, tampered).unwrap();
    let o = bin(&["replay", out]);
    assert!(matches!(code(&o), 1 | 2));
    std::fs::write(
        out,
        text.replacen("\"threatClass\":\"none\"", "\"threatClass\":\"special\"", 1),
    )
    .unwrap();
    let o = bin(&["replay", out]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("line 2 differs"));

    std::fs::write(out, "not a transcript").unwrap();
    assert_eq!(code(&bin(&["replay", out])), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn simulate_rejects_bad_arguments() {
    assert_eq!(code(&bin(&["simulate", "--adversary", "nobody"])), 2);
    assert_eq!(
        code(&bin(&[
            "simulate",
            "--adversary",
            "pacifist",
            "--horizon",
            "3"
        ])),
        2
    );
    assert_eq!(code(&bin(&["frobnicate"])), 2);
    assert_eq!(code(&bin(&["--help"])), 0);
}

#[test]
fn small_campaign_passes_and_reports() {
    let o = bin(&[
        "campaign",
        "--games",
        "12",
        "--horizon",
        "80",
        "--report",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"]["games"], 12);
    assert_eq!(v["total"]["fpWin"], 0);
    assert_eq!(v["theoremViolations"], 0);
    assert_eq!(v["byAdversary"].as_object().unwrap().len(), 6);

    let dir = scratch("seeds");
    let seeds = dir.join("seeds.txt");
    std::fs::write(&seeds, "# corpus\npacifist 4\n7\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ramsey-draw"))
        .args(["campaign", "--horizon", "60"])
        .env(SEEDS_ENV, &seeds)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("games: 2 (horizon 60)"), "{text}");
    assert!(text.ends_with("verdict: draw-consistent\n"));

    std::fs::write(&seeds, "pacifist four\n").unwrap();
    let s = seeds.to_str().unwrap();
    assert_eq!(code(&bin(&["campaign", "--seeds", s])), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn play_service_transcripts_replay_byte_for_byte() {
    let svc = Service::new(Config {
        monitors: Some(Arc::new(evaluate_states)),
        ..Config::default()
    });
    let h = canonical_h5();
    let id = svc.create().unwrap().id;
    // a human who builds H - z far away, then threatens with r
    let mut script: Vec<Vec<i64>> = h
        .graph
        .edges()
        .iter()
        .filter(|e| !e.contains(h.z))
        .chain([&h.r])
        .map(|e| e.vertices().iter().map(|&v| i64::from(v) + 500).collect())
        .collect();
    script.extend((0..20).map(|i| (0..5).map(|j| 9000 + 10 * i + j).collect()));
    for ids in &script {
        if svc.get(&id).unwrap().status != Status::Active {
            break;
        }
        svc.submit(&id, ids).unwrap();
    }
    let view = svc.get(&id).unwrap();
    assert_eq!(view.status, Status::SpWin);
    let text = svc.transcript(&id).unwrap();
    let t = engine::Transcript::from_jsonl(&text).unwrap();
    let footer = t.footer.as_ref().unwrap();
    assert_eq!(footer.monitors.len(), MONITORS.len());
    assert!(footer.monitors.iter().all(|m| m.holds));
    let check = replay_text(&text).unwrap();
    assert!(check.identical, "{:?}", check.first_difference);
}
