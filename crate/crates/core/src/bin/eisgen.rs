fn main() {
    // CLI wiring lands once the pipeline modules are in place.
}
