//! Runs the verification suite at the small budget and prints a markdown report.

use cesaro_spaces::verify::{render_report, run_all, Budget, Report, ReportFormat, VerifyConfig};

fn main() {
    let config = VerifyConfig { budget: Budget::Small, ..VerifyConfig::default() };
    let report = Report::new(&config, run_all(&config));
    print!("{}", render_report(&report, ReportFormat::Markdown));
    if report.any_failed() {
        std::process::exit(1);
    }
}
