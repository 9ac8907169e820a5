//! Every example under examples/ runs to completion.

mod construct_potential {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/construct_potential.rs"));
}

#[test]
fn construct_potential_runs() {
    construct_potential::run_example().expect("construct_potential example should run");
}

mod gram_quadrature {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gram_quadrature.rs"));
}

#[test]
fn gram_quadrature_runs() {
    gram_quadrature::run_example().expect("gram_quadrature example should run");
}

mod eigen_residual {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/eigen_residual.rs"));
}

#[test]
fn eigen_residual_runs() {
    eigen_residual::run_example().expect("eigen_residual example should run");
}

mod shooting {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/shooting.rs"));
}

#[test]
fn shooting_runs() {
    shooting::run_example().expect("shooting example should run");
}

mod asymptotics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/asymptotics.rs"));
}

#[test]
fn asymptotics_runs() {
    asymptotics::run_example().expect("asymptotics example should run");
}

mod spectral_probe {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectral_probe.rs"));
}

#[test]
fn spectral_probe_runs() {
    spectral_probe::run_example().expect("spectral_probe example should run");
}

mod radial_lift {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/radial_lift.rs"));
}

#[test]
fn radial_lift_runs() {
    radial_lift::run_example().expect("radial_lift example should run");
}

mod verify_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_report.rs"));
}

#[test]
fn verify_report_runs() {
    verify_report::run_example().expect("verify_report example should run");
}

mod cli_build {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_build.rs"));
}

#[test]
fn cli_build_runs() {
    cli_build::run_example().expect("cli_build example should run");
}
