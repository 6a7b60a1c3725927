//! Parse a formula, simplify it, differentiate it and evaluate the results.

use ornata::expr::{differentiate, parse, pretty_print, simplify, EvalContext};

fn main() {
    let f = parse("x^2*sin(y) + 0*z + 1*x").unwrap();
    println!("f        = {}", pretty_print(&f));
    println!("simplify = {}", pretty_print(&simplify(&f)));
    println!("vars     = {:?}", f.free_variables());

    let ctx = EvalContext::new().with("x", 1.5).with("y", 0.25).with("z", 9.0);
    for var in ["x", "y"] {
        let d = simplify(&differentiate(&f, var));
        println!("d/d{var}     = {}  ->  {}", pretty_print(&d), ctx.eval(&d).unwrap());
    }

    match parse("sin(x") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error    = {e}"),
    }
}
