#![no_main]

use flipdist::model::{tree_to_triangulation, triangulation_to_tree, BinaryTree};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(tree) = BinaryTree::parse(text) {
        let printed = tree.to_text();
        assert_eq!(BinaryTree::parse(&printed).unwrap(), tree);
        if let Ok(t) = tree_to_triangulation(&tree) {
            assert_eq!(triangulation_to_tree(&t), tree);
        }
    }
});
