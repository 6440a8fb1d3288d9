//! Everything written out reads back to an equal value.

use std::io::BufReader;

use spqg::io::{
    model_from_json, model_to_json, parse_partition, partition_to_json, read_closure_jsonl, read_matrix_market,
    write_closure_jsonl, write_matrix_market,
};
use spqg::named;
use spqg::relations::MatrixModel;
use spqg::tensor_maps::{s_map, Dims, SizeCap};
use spqg::{generate_closure, Bounds};

#[test]
fn catalogue_round_trips() {
    for name in named::NAMES {
        let p = parse_partition(&format!("@{name}")).unwrap();
        assert_eq!(parse_partition(&partition_to_json(&p)).unwrap(), p, "{name}");
        assert_eq!(parse_partition(&p.to_string()).unwrap(), p, "{name}");
    }
}

#[test]
fn closure_dump_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("closure.jsonl");
    let gens = [named::level_pair()];
    let cs = generate_closure(&gens, 2, Bounds::with_max_cols(3)).unwrap();
    write_closure_jsonl(&cs, std::fs::File::create(&path).unwrap()).unwrap();
    let dump = read_closure_jsonl(BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(dump.members, cs.members());
    assert_eq!(dump.generators, gens);
}

#[test]
fn smap_matrix_market_round_trip() {
    let m = s_map(
        &named::level_cross(),
        &Dims::new(vec![2, 2]).unwrap(),
        SizeCap::default(),
    )
    .unwrap();
    let mut buf = Vec::new();
    write_matrix_market(&m, &mut buf).unwrap();
    assert_eq!(read_matrix_market(&buf[..]).unwrap(), m);
}

#[test]
fn permutation_model_round_trip() {
    let model = MatrixModel::permutation_square(&[2, 0, 1]);
    assert_eq!(model_from_json(&model_to_json(&model)).unwrap(), model);
}
