use odeinv::invariants::beta_invariants;
use odeinv::jet::OdeSpec;
use symex::{parse, simplify, Expr};

fn check(name: &str, diff: &Expr) {
    let s = simplify(diff);
    println!("{name}: {}", if s.is_zero() { "ZERO ok" } else { "NONZERO!" });
    if !s.is_zero() { println!("  -> {s}"); }
}

fn main() {
    let t0 = std::time::Instant::now();
    // Example 4.3 concrete: f = A x^3 q^4, s = x^-4 q^-3
    let o = OdeSpec::parse("A*x^3*q^4").unwrap();
    let b = beta_invariants(&o).unwrap();
    let s = parse("x^(-4)*q^(-3)").unwrap();
    let b5_ref = parse("5/27").unwrap();
    let b5_ref = Expr::add(&b5_ref, &Expr::div(&s, &parse("3*A").unwrap()));
    check("beta5 = 5/27 + s/(3A)", &Expr::sub(b.get(5), &b5_ref));
    let b6_ref = Expr::add(&parse("5/9").unwrap(), &Expr::div(&s, &parse("2*A").unwrap()));
    check("beta6 = 5/9 + s/(2A)", &Expr::sub(b.get(6), &b6_ref));
    let b11_ref = Expr::add_all(&[
        parse("5/243").unwrap(),
        Expr::div(&s, &parse("18*A").unwrap()),
        Expr::div(&Expr::powi(&s, 2), &parse("9*A^2").unwrap()),
    ]);
    check("beta11 = 5/243 + s/(18A) + s^2/(9A^2)", &Expr::sub(b.get(11), &b11_ref));
    for i in [1,2,3,4,7,8,9,10] {
        check(&format!("beta{i} = 0"), b.get(i));
    }
    println!("4.3 concrete time: {:?}", t0.elapsed());

    // Remark identities
    let t0 = std::time::Instant::now();
    let i1 = Expr::add_all(&[
        Expr::mul(&Expr::int(3), b.get(5)),
        Expr::mul(&Expr::int(-2), b.get(6)),
        parse("5/9").unwrap(),
    ]);
    check("I1 = 3b5 - 2b6 + 5/9", &i1);
    let u = Expr::sub(&Expr::mul(&Expr::int(3), b.get(5)), &parse("5/9").unwrap());
    let i2 = Expr::add_all(&[
        parse("5/243").unwrap(),
        Expr::div(&u, &Expr::int(18)),
        Expr::div(&Expr::powi(&u, 2), &Expr::int(9)),
        Expr::neg(b.get(11)),
    ]);
    check("I2", &i2);
    println!("remark time: {:?}", t0.elapsed());

    // Example 4.4: f = A y^-7 p^7 q^3, s = y^7 p^-8 q^-1, t = y^-8 p^10
    let t0 = std::time::Instant::now();
    let o = OdeSpec::parse("A*y^(-7)*p^7*q^3").unwrap();
    let b = beta_invariants(&o).unwrap();
    println!("4.4 beta computation: {:?}", t0.elapsed());
    let sv = parse("y^7*p^(-8)*q^(-1)").unwrap();
    let tv = parse("y^(-8)*p^10").unwrap();
    let subs = |src: &str| {
        let e = parse(src).unwrap();
        symex::substitute_pairs(&e, &[("s", sv.clone()), ("t", tv.clone())])
    };
    let refs = [
        (1, "-7/9*s^2 - 7/18*s"),
        (2, "-7/72*s^3*t - 7/12*s^2 - 7/24*s"),
        (3, "49/432*s^4*t + 7/27*s^3 + 35/432*s^2"),
        (4, "35/2592*s^6*t^2 + 245/1296*t*s^5 + (245/648 + 49/1944*t)*s^4 + 161/1296*s^3 + 7/864*s^2"),
        (5, "7/12*s^3*t + (7/12 - 7/12*t)*s^2 + 7/12*s + 1/12"),
        (6, "-7/6*t*s^2 + 7/6*s + 1/3"),
        (7, "7/12*s^3*t - 35/36*s^2 - 7/36*s"),
        (8, "-245/648*s^4*t + (7/18 + 49/216*t)*s^3 - 35/216*s^2 - 7/216*s"),
        (9, "7/432*t^2*s^5 + 49/1296*s^4*t + (49/108 + 7/432*t)*s^3 + 35/432*s^2"),
        (10, "-217/7776*s^6*t^2 - 343/2592*t*s^5 + (-49/432 - 245/3888*t)*s^4 + 175/2592*s^3 + 35/2592*s^2"),
        (11, "7/9*t^2*s^4 - 35/36*s^3*t"),
    ];
    for (i, r) in refs {
        let t1 = std::time::Instant::now();
        check(&format!("4.4 beta{i}"), &Expr::sub(b.get(i), &subs(r)));
        println!("   ({:?})", t1.elapsed());
    }
    println!("total: {:?}", t0.elapsed());
}
