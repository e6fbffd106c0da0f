#![no_main]

use flipdist::model::Triangulation;
use flipdist::search::FlipPath;
use libfuzzer_sys::fuzz_target;

// Input: a triangulation (two lines), then the flip lines.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut parts = text.splitn(3, '\n');
    let head = format!("{}\n{}\n", parts.next().unwrap_or(""), parts.next().unwrap_or(""));
    let Ok(start) = Triangulation::parse(&head) else { return };
    if let Ok(path) = FlipPath::parse(start.clone(), parts.next().unwrap_or("")) {
        let end = path.end().unwrap();
        assert_eq!(FlipPath::parse(start, &path.to_text().unwrap()).unwrap(), path);
        assert_eq!(end.n(), path.start.n());
    }
});
