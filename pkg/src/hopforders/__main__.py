from hopforders.cli import main

main()
