use apnlike::resultant::{expand_product, parse_bpoly, parse_factored, resultant_y, UPoly};

const G: &str = "y^2*x^4 + y*x^4 + y^2*x^2 + y*x^2 + x^2 + y + 1";

fn res(f: &str, g: &str) -> UPoly {
    resultant_y(&parse_bpoly(f).unwrap(), &parse_bpoly(g).unwrap())
}

fn expand(s: &str) -> UPoly {
    expand_product(&parse_factored(s).unwrap())
}

#[test]
fn odd_case_resultant() {
    let got = res("x^2*y^2 + x*y^2 + x^2*y + x*y + y + x + 1", G);
    assert_eq!(got, expand("x^2 (x+1)^2 (x^3+x+1) (x^3+x^2+1)"));
    assert_eq!(got.to_string(), "x^10 + x^9 + x^3 + x^2");
}

#[test]
fn even_case_resultant() {
    let got = res("x^2*y^4 + x*y^4 + x^2*y^2 + x*y^2 + y^2 + x + 1", G);
    // the cubed form is off by exactly one factor of x^2+x+1
    let cubed = expand("x^2 (x+1)^2 (x^2+x+1)^3 (x^3+x+1) (x^3+x^2+1)");
    assert_eq!(got, expand("x^2 (x+1)^2 (x^2+x+1)^4 (x^3+x+1) (x^3+x^2+1)"));
    assert_eq!(got, cubed.mul(&UPoly::from_bits(0b111)));
    assert_eq!(cubed.degree(), Some(16));
}

#[test]
fn third_resultant() {
    let f = "x^3*y + (y+1)*(x+1)^3 + (y^2+y)*(x^2+x)^3";
    let g = "y^3*x^2 + (x^2+1)*(y+1)^3 + (x^4+x^2)*(y^2+y)^3";
    assert_eq!(
        res(f, g),
        expand("x^4 (x+1)^4 (x^2+x+1)^4 (x^4+x+1)^2 (x^4+x^3+1)^2 (x^4+x^3+x^2+x+1)^2")
    );
}

#[test]
fn common_roots_are_roots_of_the_resultant() {
    let field = apnlike::Field::new(12).unwrap();
    let g = parse_bpoly(G).unwrap();
    for f in [
        "x^2*y^2 + x*y^2 + x^2*y + x*y + y + x + 1",
        "x^2*y^4 + x*y^4 + x^2*y^2 + x*y^2 + y^2 + x + 1",
    ] {
        let f = parse_bpoly(f).unwrap();
        let r = resultant_y(&f, &g);
        let mut shared = 0;
        for x0 in field.subfield_elements(6).unwrap() {
            let common = (0..field.size() as u32)
                .any(|y0| f.eval(&field, x0, y0) == 0 && g.eval(&field, x0, y0) == 0);
            if common {
                shared += 1;
                assert_eq!(r.eval(&field, x0), 0, "x0 = {x0:#x}");
            }
        }
        assert!(shared > 0);
    }
}
