use lambda_cavity::model::NonlinearitySpec;
use lambda_cavity::squeezing::DistributionMode;
use lambda_cavity_cli::{preset, preset_catalog, ConfigError};

#[test]
fn catalog_covers_both_figures_all_panels_both_couplings() {
    let names = preset_catalog();
    assert_eq!(names.len(), 24);
    for fig in ['2', '3'] {
        for panel in ['a', 'b', 'c', 'd', 'e', 'f'] {
            for coupling in ["const", "intensity"] {
                let name = format!("fig{fig}{panel}-{coupling}");
                assert!(names.contains(&name), "missing {name}");
                preset(&name).unwrap();
            }
        }
    }
}

#[test]
fn fig2b_const_is_the_plain_kerr_resonant_scenario() {
    let cfg = preset("fig2b-const").unwrap();
    assert_eq!(cfg.params.chi, 0.4);
    assert_eq!(cfg.params.g_spec[0], NonlinearitySpec::Constant);
    assert_eq!(cfg.params.f_spec[0], NonlinearitySpec::Constant);
    assert_eq!(cfg.params.delta_override, Some((0.0, 0.0)));
    assert_eq!(cfg.params.lambda, [1.0, 1.0]);
    assert!((cfg.modes[0].mean_photon() - 10.0).abs() < 1e-12);
    assert!((cfg.modes[1].mean_photon() - 10.0).abs() < 1e-12);
    assert!(cfg.outputs.dem && !cfg.outputs.squeezing);
    assert_eq!(cfg.dist_mode, DistributionMode::Traced);
}

#[test]
fn fig2f_intensity_is_the_deformed_kerr_detuned_scenario() {
    let cfg = preset("fig2f-intensity").unwrap();
    assert_eq!(cfg.params.chi, 0.4);
    assert_eq!(cfg.params.g_spec[0], NonlinearitySpec::InverseSqrtN);
    assert_eq!(cfg.params.f_spec[0], NonlinearitySpec::SqrtN);
    assert_eq!(cfg.params.delta_override, Some((7.0, 15.0)));
}

#[test]
fn fig3_presets_emit_squeezing_instead_of_dem() {
    let cfg = preset("fig3c-const").unwrap();
    assert!(!cfg.outputs.dem && cfg.outputs.squeezing && cfg.outputs.norm);
    // same physics as the fig2 twin
    let twin = preset("fig2c-const").unwrap();
    assert_eq!(cfg.params, twin.params);
    assert_eq!(cfg.modes, twin.modes);
}

#[test]
fn unknown_presets_list_the_catalog() {
    let err = preset("fig9x").unwrap_err();
    match err {
        ConfigError::UnknownPreset { name, catalog } => {
            assert_eq!(name, "fig9x");
            assert!(catalog.contains("fig2a-const"));
            assert!(catalog.contains("fig3f-intensity"));
        }
        other => panic!("unexpected error {other:?}"),
    }
    assert!(preset("fig2g-const").is_err());
    assert!(preset("fig2a-linear").is_err());
    assert!(preset("").is_err());
}

#[test]
fn preset_truncation_matches_the_poisson_tail_rule() {
    let cfg = preset("fig2a-const").unwrap();
    assert_eq!(cfg.grid.n_max, [36, 36]);
    assert_eq!(cfg.grid.tail_tol, 1e-10);
    assert_eq!(cfg.tau_max, 25.0);
    assert_eq!(cfg.dtau_entropy, 0.01);
    assert_eq!(cfg.dtau_squeezing, 0.05);
}
