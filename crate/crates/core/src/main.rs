use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = subset_itrans::cli::run(std::env::args_os());
    if code != 0 && report.starts_with("error") {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    ExitCode::from(code as u8)
}
