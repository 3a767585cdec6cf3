use isochart::deformation::{self, ExtWindow};
use isochart::ext::{self, minimal_resolution};
use isochart::svg;

#[test]
fn chart_with_towers_parses_as_svg() {
    let res = minimal_resolution(6, 16).unwrap();
    let e2 = res.ext_chart(6, 16);
    let window = ExtWindow::new(6, 15).with_max_stem(9);
    let a = deformation::assemble_and_check(&e2, window, vec![]).unwrap();
    let crho = ext::crho_chart(&e2);
    let text = svg::render_chart(&crho, Some(&a.module), &svg::h0_segments(&res, 6, 16));
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
    let dots = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
    assert_eq!(dots, crho.total_dim());
    for n in doc.descendants().filter(|n| n.has_tag_name("line")) {
        for attr in ["x1", "y1", "x2", "y2"] {
            n.attribute(attr).unwrap().parse::<i64>().unwrap();
        }
    }
    // h0 times h0^k is nonzero for every k in range, so the tower is drawn
    let h0 = svg::h0_segments(&res, 6, 16);
    assert!(h0.iter().any(|s| s.stem == 0 && s.from.0 == 0));
    assert!(h0.iter().any(|s| s.stem == 3));
}
