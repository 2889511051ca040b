//! The text syntax and the certificate documents the binary prints.

use lsc::cli::{self, CertificateDocument};
use lsc::dsl;
use lsc::Result;

fn main() -> Result<()> {
    let e = dsl::parse_set("(res(0,2) & thick(geom b=10 c=1)) | fin{3,7}")?;
    println!("parsed:  {e:?}");
    println!("printed: {e}");
    match dsl::parse_set("res(0,2) |\n  res(1,3) & full") {
        Ok(_) => println!("unexpected"),
        Err(err) => println!("error:   {err}"),
    }

    let args: Vec<String> =
        ["lsc", "certify", "syndetic", "--set", "res(1,3)", "--window", "1000"].iter().map(|s| s.to_string()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = cli::run(&args, &mut out, &mut err);
    let text = String::from_utf8(out).expect("utf-8");
    print!("status {status}\n{text}");

    let doc = CertificateDocument::parse(&text)?;
    println!("witness {:?}, checksum {}", doc.witness, doc.checksum());
    println!("replays as {:?}", doc.argv());
    Ok(())
}
