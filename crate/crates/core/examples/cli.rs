//! Drives the command-line interface in-process with a quiver file.

use std::io;

fn main() {
    let path = std::env::temp_dir().join("cyclic_hall_a2.json");
    std::fs::write(&path, r#"{"vertices":["1","2"],"arrows":[{"from":"1","to":"2"}]}"#).unwrap();
    let quiver = path.to_str().unwrap();
    for args in [
        vec!["enumerate"],
        vec!["euler"],
        vec!["dh-mul", "e(1,1)", "e(2,0)"],
    ] {
        let argv = ["cyclic-hall", "--quiver", quiver, "--dim", "1"].into_iter().chain(args);
        let code = cyclic_hall::cli::run_with(argv, &mut io::stdout(), &mut io::stderr());
        println!("exit {code}");
    }
}
