//! Drives the command-line front end in-process: an INI config supplies
//! defaults and flags override them.

use unruh_lab::cli;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join(format!("unruh-lab-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let cfg = dir.join("run.ini");
    std::fs::write(
        &cfg,
        "scenario = accelerated\nd = 1\nm = 1\nt_kms = 2\nomega = 1\nsigma = 1\n\n[switching]\nfamily = gaussian\n",
    )?;
    let c = cfg.to_str().unwrap();

    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    for args in [
        vec!["eval", "--config", c],
        vec!["eval", "--config", c, "--sigma", "inf"],
        vec!["eval", "--config", c, "--sigma", "inf", "--method", "asymptotic", "--m", "100"],
        vec!["eval", "--scenario", "accelerated", "--lambda-ir", "0.5", "--beta", "1", "--omega", "1"],
    ] {
        let code = cli::run(std::iter::once("unruh-lab").chain(args.iter().copied()), &mut out, &mut err);
        println!("exit {code}");
    }

    let csv = dir.join("scan.csv");
    let code = cli::run(
        ["unruh-lab", "scan", "--config", c, "--grid", "t_kms=1:5:3", "--grid", "sigma=inf", "--out", csv.to_str().unwrap()],
        &mut out,
        &mut err,
    );
    println!("scan exit {code}\n{}", std::fs::read_to_string(&csv)?);
    std::fs::remove_dir_all(&dir)
}
