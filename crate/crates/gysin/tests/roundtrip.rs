use gysin::checks::all_presets;
use gysin::commands::run_engine;
use gysin::output::ResultJson;
use gysin::problem_file::{export_problem_json, parse_problem};
use gysin_core::engine::default_window;

#[test]
fn every_preset_survives_export_and_import() {
    for p in all_presets() {
        let w = default_window(&p);
        let text = export_problem_json(&p, Some(w));
        let loaded = parse_problem(&text).unwrap_or_else(|e| panic!("{}: {e}", p.label));
        assert_eq!(loaded.window, Some(w));
        let back = loaded.problem;
        assert_eq!(back.basis, p.basis, "{}", p.label);
        assert_eq!(back.total_delta(), p.total_delta(), "{}", p.label);
        assert_eq!(back.boundary, p.boundary, "{}", p.label);
        let a = run_engine(&p, w, None).unwrap();
        let b = run_engine(&back, w, None).unwrap();
        assert_eq!(a.groups, b.groups, "{}", p.label);
        assert_eq!(a.period, b.period);
        assert_eq!(export_problem_json(&back, Some(w)), text, "{}", p.label);
    }
}

#[test]
fn json_output_reparses_to_the_same_result() {
    for p in all_presets() {
        let r = run_engine(&p, default_window(&p), None).unwrap();
        let text = ResultJson::new(&r, Default::default()).to_pretty();
        let back: ResultJson = serde_json::from_str(&text).unwrap();
        let r2 = back.to_result();
        assert_eq!(r2.groups, r.groups, "{}", p.label);
        assert_eq!(r2.window, r.window);
        assert_eq!(r2.ring, r.ring);
        assert_eq!(r2.mode, r.mode);
        assert_eq!(r2.period, r.period);
    }
}
