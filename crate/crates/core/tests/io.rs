mod common;

use posetmat::constructions::order4_operands;
use posetmat::enumerate::enumerate_oracle;
use posetmat::io::catalog::{entry_file_name, write_catalog, INDEX_FILE, INDEX_HEADER};
use posetmat::io::{
    eval_recipe_str, parse_matrix, parse_recipe, serialize_matrix, to_dot, SymbolTable,
};
use posetmat::{compose_square, Error, PosetMatrix};

use common::*;

#[test]
fn every_small_poset_round_trips() {
    for n in 1..=5 {
        for a in natural_posets(n) {
            let m = matrix(&a);
            let text = serialize_matrix(&m);
            let back = parse_matrix(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(serialize_matrix(&back), text);
            assert_eq!(to_dot(&back), to_dot(&m));
        }
    }
}

#[test]
fn labels_survive_the_round_trip() {
    let m = matrix(&grid_from_str("1000;1100;1110;1101"))
        .with_labels(["a", "b", "c.1", "d"])
        .unwrap();
    let text = serialize_matrix(&m);
    assert!(text.starts_with("4\nlabels: a b c.1 d\n"));
    assert_eq!(parse_matrix(&text).unwrap(), m);
}

#[test]
fn displayed_a_serializes_to_its_rows() {
    let text = "4\nlabels: 1 2 3 4\n1 0 0 0\n1 1 0 0\n1 1 1 0\n1 1 0 1\n";
    let a = parse_matrix(text).unwrap();
    assert_eq!(
        serialize_matrix(&a),
        "4\n1 0 0 0\n1 1 0 0\n1 1 1 0\n1 1 0 1\n"
    );
}

#[test]
fn a_has_three_hasse_edges() {
    let a = matrix(&grid_from_str("1000;1100;1110;1101"));
    let dot = to_dot(&a);
    assert!(dot.starts_with("digraph poset {\n"));
    let edges: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("->"))
        .map(str::trim)
        .collect();
    assert_eq!(
        edges,
        ["\"1\" -> \"2\";", "\"2\" -> \"3\";", "\"2\" -> \"4\";"]
    );
}

#[test]
fn recipes_match_direct_composition() {
    let symbols = order4_operands().unwrap();
    let names: Vec<String> = symbols.names().map(str::to_string).collect();
    for x in &names {
        for y in &names {
            let (a, b) = (symbols.get(x).unwrap(), symbols.get(y).unwrap());
            for i in 1..=a.order() {
                let via = eval_recipe_str(&format!("{x} sq@{i} {y}"), &symbols).unwrap();
                assert_eq!(via, compose_square(a, i, b).unwrap(), "{x} sq@{i} {y}");
            }
        }
    }
}

#[test]
fn table_row_one_is_a_connected_order_five_class() {
    let symbols = order4_operands().unwrap();
    let out = eval_recipe_str("G sq@1 C2", &symbols).unwrap();
    let m = out.into_poset().unwrap();
    assert_eq!(m.order(), 5);
    assert!(posetmat::is_connected(&m));
    assert_eq!(m.row_masks(), PosetMatrix::chain(5).unwrap().row_masks());
}

#[test]
fn nested_recipes_build_chains() {
    let symbols = SymbolTable::with_builtins();
    let out = eval_recipe_str("(C2 sq@1 C2) sq@1 C2", &symbols).unwrap();
    assert_eq!(out.matrix.row_string(), "1000;1100;1110;1111");
    let deep = eval_recipe_str("((C2 sq@2 I2) up@1 (I2 dn@2 C2)) sq@3 P1", &symbols).unwrap();
    assert_eq!(deep.matrix.order(), 5);
    assert_eq!(
        parse_recipe("((C2 sq@2 I2) up@1 (I2 dn@2 C2)) sq@3 P1")
            .unwrap()
            .to_string(),
        "((C2 sq@2 I2) up@1 (I2 dn@2 C2)) sq@3 P1"
    );
}

#[test]
fn definitions_load_from_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("A.txt"), "4\n1000\n1100\n1110\n1101\n").unwrap();
    std::fs::write(dir.path().join("notes.md"), "ignored").unwrap();
    let mut symbols = SymbolTable::with_builtins();
    symbols.load_dir(dir.path()).unwrap();
    let out = eval_recipe_str("A sq@2 C2", &symbols).unwrap();
    assert_eq!(out.matrix.row_string(), "10000;11000;11100;11110;11101");
    let starred = eval_recipe_str("A*", &symbols).unwrap();
    assert_eq!(starred.matrix.row_string(), "1000;0100;1110;1111");

    std::fs::write(dir.path().join("Bad.txt"), "2\n1 1\n1 1\n").unwrap();
    assert!(matches!(
        symbols.load_dir(dir.path()),
        Err(Error::Malformed(_))
    ));
}

#[test]
fn catalogs_are_written_with_an_index() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = enumerate_oracle(4).unwrap();
    let index = write_catalog(dir.path(), &catalog).unwrap();
    assert_eq!(index, dir.path().join(INDEX_FILE));
    let text = std::fs::read_to_string(index).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(INDEX_HEADER));
    for (k, (line, (key, entry))) in lines.zip(&catalog.entries).enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields[0], key.to_string());
        assert_eq!(fields[1], if entry.connected { "yes" } else { "no" });
        assert_eq!(fields[2], "-");
        assert_eq!(fields[3], entry_file_name(4, k + 1));
        let body = std::fs::read_to_string(dir.path().join(fields[3])).unwrap();
        assert_eq!(parse_matrix(&body).unwrap(), entry.representative);
    }
}
