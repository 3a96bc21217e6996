use antimagic_web::{build_json, solve_json, table_csv};

#[test]
fn build_gn_doc() {
    let out = build_json(r#"{"family":"gn","n":30,"indices":[1,2,4]}"#, 0).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["name"], "GN(n=30,i=[1,2,4])");
    assert_eq!(v["drawable"], true);
    assert_eq!(v["doc"]["certificate"]["color_count"], 3);
    assert_eq!(v["doc"]["instance"]["bracelets"], serde_json::json!([5, 2, 6, 14]));
}

#[test]
fn build_rejects_bad_specs() {
    assert!(build_json(r#"{"family":"fb","n":8}"#, 0).unwrap_err().contains("parity"));
    assert!(build_json("{", 0).unwrap_err().starts_with("spec:"));
}

#[test]
fn table_and_solve() {
    assert!(table_csv("pt", 2).unwrap().starts_with("i,1,2,3,4,5\nR1,1,3,5,2,4\n"));
    assert!(table_csv("m1", 0).is_err());
    let r: serde_json::Value = serde_json::from_str(&solve_json("fb1", 10).unwrap()).unwrap();
    assert_eq!(r["chi_la"], 3);
    assert!(solve_json("k2", 10).is_err());
}
