//! Writes the bundled presentation files, plus a malformed one, into a directory.
//!
//! ```text
//! cargo run --example write_instances -- corpus/instances
//! ```

use std::path::PathBuf;

use weakhopf::presentation::bundled_instances;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "instances".into()),
    );
    std::fs::create_dir_all(&dir)?;
    for (stem, file) in bundled_instances() {
        let path = dir.join(format!("{stem}.json"));
        std::fs::write(&path, file.to_json())?;
        println!("wrote {}", path.display());
        if stem == "pair_groupoid" {
            let bad = file.to_json().replacen("\"1\"", "\"1/0\"", 1);
            let path = dir.join("malformed_scalar.json");
            std::fs::write(&path, bad)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
