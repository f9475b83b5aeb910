//! Drive the command line in-process.

fn main() {
    let commands: [&[&str]; 4] = [
        &["omegaclone", "classify", "--term", "(a 1 1)"],
        &["omegaclone", "product", "--porcelain", "--term", "([K4 (a 1 2)] T2/0 T2/0)"],
        &["omegaclone", "anti", "nerode", "--pred", "palindromes", "01", "10"],
        &["omegaclone", "oracle", "--suite", "kind1", "--seed", "1", "--trials", "50"],
    ];
    for args in commands {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = omegaclone::cli::run(args.iter().copied(), &mut out, &mut err);
        println!("$ {}\n{}{}(exit {code})\n", args[1..].join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
