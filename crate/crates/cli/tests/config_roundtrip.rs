use lambda_cavity::model::NonlinearitySpec;
use lambda_cavity_cli::{preset, preset_catalog, ConfigError, RunConfig};

#[test]
fn every_preset_round_trips_through_the_config_format() {
    for name in preset_catalog() {
        let cfg = preset(&name).unwrap();
        let text = cfg.to_config_string();
        let parsed = RunConfig::parse(&text).unwrap();
        assert_eq!(parsed, cfg, "preset {name} did not round-trip");
    }
}

#[test]
fn tabulated_specs_and_frequencies_round_trip() {
    let mut cfg = preset("fig2a-const").unwrap();
    // tables must reach one entry past the truncation
    let table: Vec<f64> = (0..cfg.grid.n_max[0] + 2).map(|n| 1.0 / (n as f64 + 3.0)).collect();
    cfg.params.f_spec[0] = NonlinearitySpec::Tabulated(table);
    cfg.params.omega = Some([5.5, 3.25, 2.125]);
    cfg.params.mode_omega = Some([4.0, 6.75]);
    cfg.params.delta_override = None;
    let parsed = RunConfig::parse(&cfg.to_config_string()).unwrap();
    assert_eq!(parsed, cfg);
}

#[test]
fn short_tabulated_specs_are_rejected() {
    let mut cfg = preset("fig2a-const").unwrap();
    cfg.params.g_spec[1] = NonlinearitySpec::Tabulated(vec![0.0, 1.0, 0.5]);
    assert!(matches!(cfg.validate(), Err(ConfigError::Invalid(msg)) if msg.contains("g2")));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let mut text = preset("fig2c-intensity").unwrap().to_config_string();
    text.push_str("\n# trailing comment\n\n");
    let with_inline = text.replace("chi = 0.4", "chi = 0.4   # Kerr strength");
    let parsed = RunConfig::parse(&with_inline).unwrap();
    assert_eq!(parsed, preset("fig2c-intensity").unwrap());
}

#[test]
fn unknown_duplicate_and_missing_keys_are_rejected() {
    let base = preset("fig2a-const").unwrap().to_config_string();

    let unknown = format!("{base}bogus_key = 3\n");
    assert!(matches!(
        RunConfig::parse(&unknown),
        Err(ConfigError::Parse { msg, .. }) if msg.contains("unknown key")
    ));

    let duplicate = format!("{base}chi = 0.9\n");
    assert!(matches!(
        RunConfig::parse(&duplicate),
        Err(ConfigError::Parse { msg, .. }) if msg.contains("duplicate")
    ));

    let missing = base.replace("tau_max = 25\n", "");
    assert!(matches!(
        RunConfig::parse(&missing),
        Err(ConfigError::MissingKey("tau_max"))
    ));
}

#[test]
fn half_specified_optional_groups_are_rejected() {
    let base = preset("fig2d-const").unwrap().to_config_string();
    let broken = base.replace("delta3 = 15\n", "");
    assert!(matches!(broken.parse_config_err(), ConfigError::Invalid(_)));
}

trait ParseErrExt {
    fn parse_config_err(&self) -> ConfigError;
}

impl ParseErrExt for String {
    fn parse_config_err(&self) -> ConfigError {
        RunConfig::parse(self).unwrap_err()
    }
}

#[test]
fn invalid_numerics_are_rejected() {
    let base = preset("fig2a-const").unwrap().to_config_string();
    let bad = base.replace("tau_max = 25", "tau_max = -3");
    assert!(matches!(bad.parse_config_err(), ConfigError::Invalid(_)));
    let bad = base.replace("dtau = 0.01", "dtau = nonsense");
    assert!(matches!(bad.parse_config_err(), ConfigError::Parse { .. }));
}
